#include "manet/sdaodv.h"

#include <openssl/evp.h>

#include <stdexcept>

namespace manet {

Digest
ComputeDigest (NodeId dest)
{
  const unsigned char bytes[4] = {
    static_cast<unsigned char> (dest >> 24),
    static_cast<unsigned char> (dest >> 16),
    static_cast<unsigned char> (dest >> 8),
    static_cast<unsigned char> (dest),
  };
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest (bytes, sizeof bytes, out.data (), &len, EVP_sha1 (), nullptr) != 1 || len != out.size ())
    {
      throw std::runtime_error ("SHA-1 digest failed");
    }
  return out;
}

bool
SuspectList::Flag (NodeId node, AttackKind kind, SimTime now)
{
  return m_flagged.emplace (node, SuspectRecord{kind, now}).second;
}

void
NextHopShadow::Record (NodeId dest, NodeId nextHop, SimTime now, uint64_t routeGeneration)
{
  m_records[dest] = ShadowRecord{nextHop, now, routeGeneration};
}

const ShadowRecord *
NextHopShadow::Find (NodeId dest) const
{
  auto it = m_records.find (dest);
  return it == m_records.end () ? nullptr : &it->second;
}

DigestCheck
VerifyRreqDigest (RreqPacket &rreq, NodeId prevHop, const SeenRreqCache &seen, SuspectList &suspects, SimTime now)
{
  if (rreq.digest && *rreq.digest == ComputeDigest (rreq.dest))
    {
      return DigestCheck::Clean;
    }
  suspects.Flag (prevHop, AttackKind::Wormhole, now);
  if (const SeenRreq *first = seen.Find (rreq.src, rreq.bcastId))
    {
      rreq.dest = first->originalDest;
      return DigestCheck::TamperedRestored;
    }
  return DigestCheck::TamperedDropped;
}

NextHopCheck
VerifyNextHop (NodeId dest, RoutingTable &table, const NextHopShadow &shadow, SuspectList &suspects, NodeId injector,
               SimTime now)
{
  const ShadowRecord *rec = shadow.Find (dest);
  const RouteEntry *entry = table.Lookup (dest);
  if (rec == nullptr || entry == nullptr || entry->nextHop == rec->nextHop)
    {
      return NextHopCheck::Ok;
    }
  if (entry->generation != rec->routeGeneration)
    {
      return NextHopCheck::Ok; // changed through an accepted route update
    }
  table.TamperNextHop (dest, rec->nextHop);
  suspects.Flag (injector, AttackKind::Byzantine, now);
  return NextHopCheck::Restored;
}

bool
IsLoopedBack (NodeId dest, NodeId prevHop, const NextHopShadow &shadow)
{
  const ShadowRecord *rec = shadow.Find (dest);
  return rec != nullptr && rec->nextHop == prevHop;
}

} // namespace manet
