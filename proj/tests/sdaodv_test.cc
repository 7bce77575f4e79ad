#include "manet/sdaodv.h"

#include <doctest.h>

#include <cstdio>
#include <set>
#include <string>

using namespace manet;

namespace {

std::string
Hex (const Digest &d)
{
  std::string s;
  char buf[3];
  for (uint8_t b : d)
    {
      std::snprintf (buf, sizeof buf, "%02x", b);
      s += buf;
    }
  return s;
}

} // namespace

TEST_SUITE ("sdaodv")
{
  TEST_CASE ("digest matches an independent SHA-1")
  {
    // Frozen from Python's hashlib over the 4-byte big-endian id.
    CHECK (Hex (ComputeDigest (0)) == "9069ca78e7450a285173431b3e52c5c25299e473");
    CHECK (Hex (ComputeDigest (7)) == "41a53770303a0776a1378239e2ee0fd825705c74");
    CHECK (Hex (ComputeDigest (0xFFFFFFFFu)) == "d9be6524a5f5047db5866813acf3277892a7a30a");
    CHECK (ComputeDigest (7) == ComputeDigest (7));
  }

  TEST_CASE ("no digest collisions over ids 0..9999")
  {
    std::set<Digest> seen;
    for (NodeId d = 0; d < 10000; ++d)
      {
        seen.insert (ComputeDigest (d));
      }
    CHECK (seen.size () == 10000);
  }

  TEST_CASE ("clean RREQs are never flagged")
  {
    Simulator sim;
    SeenRreqCache cache (sim, SimTime::Seconds (5));
    SuspectList suspects;
    RngStream r (5, "clean");
    int notClean = 0;
    for (int i = 0; i < 10000; ++i)
      {
        RreqPacket p;
        p.src = static_cast<NodeId> (r.NextU64 ());
        p.dest = static_cast<NodeId> (r.NextU64 ());
        p.bcastId = static_cast<uint32_t> (i);
        p.digest = ComputeDigest (p.dest);
        notClean += VerifyRreqDigest (p, 1, cache, suspects, sim.Now ()) != DigestCheck::Clean;
      }
    CHECK (notClean == 0);
    CHECK (suspects.Size () == 0);
  }

  TEST_CASE ("rewritten destination is restored from the first clean copy")
  {
    Simulator sim;
    SeenRreqCache cache (sim, SimTime::Seconds (5));
    SuspectList suspects;
    RreqPacket clean;
    clean.src = 0;
    clean.dest = 7;
    clean.bcastId = 1;
    clean.digest = ComputeDigest (7);
    cache.Insert (2, clean);

    RreqPacket forged = clean;
    forged.dest = 6;
    CHECK (VerifyRreqDigest (forged, 4, cache, suspects, sim.Now ()) == DigestCheck::TamperedRestored);
    CHECK (forged.dest == 7);
    CHECK (suspects.Contains (4));

    RreqPacket unknown = forged;
    unknown.bcastId = 2;
    unknown.dest = 6;
    CHECK (VerifyRreqDigest (unknown, 5, cache, suspects, sim.Now ()) == DigestCheck::TamperedDropped);
    CHECK (suspects.Contains (5));

    RreqPacket missing = clean;
    missing.digest.reset ();
    missing.bcastId = 3;
    CHECK (VerifyRreqDigest (missing, 3, cache, suspects, sim.Now ()) == DigestCheck::TamperedDropped);
  }

  TEST_CASE ("next-hop shadow")
  {
    Simulator sim;
    RoutingTable table (sim, SimTime::Seconds (3));
    NextHopShadow shadow;
    SuspectList suspects;

    table.UpdateRoute (9, 1, 3, 2);
    shadow.Record (9, 3, sim.Now (), table.Lookup (9)->generation);
    CHECK (shadow.Find (9)->nextHop == 3);
    CHECK (VerifyNextHop (9, table, shadow, suspects, 3, sim.Now ()) == NextHopCheck::Ok);

    table.UpdateRoute (9, 2, 5, 2);
    shadow.Record (9, 5, sim.Now (), table.Lookup (9)->generation);
    CHECK (shadow.Find (9)->nextHop == 5);

    // A legitimate refresh between record and check is not an attack.
    table.UpdateRoute (9, 3, 6, 2);
    CHECK (VerifyNextHop (9, table, shadow, suspects, 6, sim.Now ()) == NextHopCheck::Ok);
    CHECK (suspects.Size () == 0);

    shadow.Record (9, 6, sim.Now (), table.Lookup (9)->generation);
    table.TamperNextHop (9, 1);
    CHECK (VerifyNextHop (9, table, shadow, suspects, 6, sim.Now ()) == NextHopCheck::Restored);
    CHECK (table.Lookup (9)->nextHop == 6);
    CHECK (suspects.Contains (6));

    CHECK (IsLoopedBack (9, 6, shadow));
    CHECK_FALSE (IsLoopedBack (9, 2, shadow));
  }

  TEST_CASE ("suspect list is monotone")
  {
    SuspectList s;
    CHECK_FALSE (s.Contains (4));
    CHECK (s.Flag (4, AttackKind::Blackhole, SimTime{}));
    CHECK_FALSE (s.Flag (4, AttackKind::Wormhole, SimTime::Seconds (1)));
    CHECK (s.All ().at (4).kind == AttackKind::Blackhole);
  }
}
