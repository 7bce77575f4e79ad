// Small vocabulary types shared by every module.
#ifndef MANET_TYPES_H
#define MANET_TYPES_H

#include <cstdint>
#include <optional>
#include <string_view>

namespace manet {

using NodeId = uint32_t;

enum class ProtocolKind
{
  Aodv,
  SdAodv,
};

enum class AttackKind
{
  None,
  Wormhole,
  Byzantine,
  Blackhole,
};

enum class DropReason
{
  NoRoute,
  BufferOverflow,
  Blackhole,
  TtlExhausted,
  LinkDrop,
};

std::string_view ToString (ProtocolKind p);
std::string_view ToString (AttackKind a);
std::string_view ToString (DropReason r);
std::optional<ProtocolKind> ParseProtocol (std::string_view s);
std::optional<AttackKind> ParseAttack (std::string_view s);

} // namespace manet

#endif
