#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace opstat {

template <class Tag>
struct Id {
  uint32_t value = 0;
  friend auto operator<=>(Id, Id) = default;
};

using ObjectId = Id<struct ObjectTag>;
using ConstId = Id<struct ConstTag>;
using FuncId = Id<struct FuncTag>;
using VarId = Id<struct VarTag>;

/// A sort (u,v) models a morphism with source u and target v.
struct Sort {
  ObjectId src;
  ObjectId tgt;
  friend auto operator<=>(Sort, Sort) = default;
};

/// Sort of a function symbol: (u1,v1) x ... x (un,vn) -> (u,v), n >= 1.
struct FunctionSort {
  std::vector<Sort> args;
  Sort result;
  friend bool operator==(const FunctionSort&, const FunctionSort&) = default;
};

}  // namespace opstat
