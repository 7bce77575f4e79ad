#include "manet/types.h"

namespace manet {

std::string_view
ToString (ProtocolKind p)
{
  return p == ProtocolKind::Aodv ? "aodv" : "sdaodv";
}

std::string_view
ToString (AttackKind a)
{
  switch (a)
    {
    case AttackKind::None:
      return "none";
    case AttackKind::Wormhole:
      return "wormhole";
    case AttackKind::Byzantine:
      return "byzantine";
    case AttackKind::Blackhole:
      return "blackhole";
    }
  return "none";
}

std::string_view
ToString (DropReason r)
{
  switch (r)
    {
    case DropReason::NoRoute:
      return "no-route";
    case DropReason::BufferOverflow:
      return "buffer-overflow";
    case DropReason::Blackhole:
      return "blackhole";
    case DropReason::TtlExhausted:
      return "ttl-exhausted";
    case DropReason::LinkDrop:
      return "link-drop";
    }
  return "unknown";
}

std::optional<ProtocolKind>
ParseProtocol (std::string_view s)
{
  if (s == "aodv")
    {
      return ProtocolKind::Aodv;
    }
  if (s == "sdaodv")
    {
      return ProtocolKind::SdAodv;
    }
  return std::nullopt;
}

std::optional<AttackKind>
ParseAttack (std::string_view s)
{
  for (auto a : {AttackKind::None, AttackKind::Wormhole, AttackKind::Byzantine, AttackKind::Blackhole})
    {
      if (ToString (a) == s)
        {
          return a;
        }
    }
  return std::nullopt;
}

} // namespace manet
