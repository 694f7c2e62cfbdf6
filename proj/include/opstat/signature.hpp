#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opstat/errors.hpp"
#include "opstat/ids.hpp"

namespace opstat {

enum class ArithKind : uint8_t { None, Add, Neg, Mul };

struct ConstInfo {
  std::string name;
  Sort sort;
  bool is_zero = false;
};

struct FuncInfo {
  std::string name;
  FunctionSort sort;
  ArithKind arith = ArithKind::None;
};

struct VarInfo {
  std::string name;
  Sort sort;
};

/// Symbol table of the many-sorted logic: object symbols, sorted constants
/// (with one zero constant per sort), sorted function symbols (with the
/// arithmetic symbols -, +, * for every applicable sort combination), and
/// sorted variables.
///
/// A signature is a value; extension (adding symbols) mutates the local copy
/// only, so formulas built against an older copy remain valid because ids are
/// append-only. Overloaded function symbols are distinct entries that share a
/// surface name and are resolved from argument sorts.
class Signature {
public:
  ObjectId add_object(const std::string& name);
  ConstId add_constant(const std::string& name, Sort sort);
  FuncId add_function(const std::string& name, FunctionSort sort);
  VarId add_variable(const std::string& name, Sort sort);

  /// Generated names carry the reserved '$' prefix and a monotone counter,
  /// e.g. "$x1". User input never parses to such a name.
  ConstId fresh_constant(std::string_view base, Sort sort);
  FuncId fresh_function(std::string_view base, FunctionSort sort);
  VarId fresh_variable(std::string_view base, Sort sort);

  size_t object_count() const { return objects_.size(); }
  size_t constant_count() const { return constants_.size(); }
  size_t function_count() const { return functions_.size(); }
  size_t variable_count() const { return variables_.size(); }

  const std::string& object_name(ObjectId id) const { return objects_.at(id.value); }
  const ConstInfo& constant(ConstId id) const { return constants_.at(id.value); }
  const FuncInfo& function(FuncId id) const { return functions_.at(id.value); }
  const VarInfo& variable(VarId id) const { return variables_.at(id.value); }

  bool valid(ObjectId id) const { return id.value < objects_.size(); }
  bool valid(ConstId id) const { return id.value < constants_.size(); }
  bool valid(FuncId id) const { return id.value < functions_.size(); }
  bool valid(VarId id) const { return id.value < variables_.size(); }

  std::optional<ObjectId> find_object(std::string_view name) const;
  std::optional<ConstId> find_constant(std::string_view name) const;
  std::optional<VarId> find_variable(std::string_view name) const;
  /// All overloads declared under this surface name (user symbols only).
  std::vector<FuncId> find_functions(std::string_view name) const;
  /// Resolve an overload from exact argument sorts; nullopt when absent.
  std::optional<FuncId> resolve_function(std::string_view name, const std::vector<Sort>& args) const;

  ConstId zero(Sort sort) const;
  FuncId add_symbol(Sort sort) const;
  FuncId neg_symbol(Sort sort) const;
  /// Composition symbol for left * right with left : (w,v), right : (u,w).
  FuncId mul_symbol(Sort left, Sort right) const;

  bool is_arithmetic(FuncId id) const { return function(id).arith != ArithKind::None; }

private:
  void ensure_builtin_symbols();
  void check_name_free(const std::string& name) const;

  std::vector<std::string> objects_;
  std::vector<ConstInfo> constants_;
  std::vector<FuncInfo> functions_;
  std::vector<VarInfo> variables_;

  std::map<std::string, ObjectId, std::less<>> object_names_;
  std::map<std::string, ConstId, std::less<>> constant_names_;
  std::map<std::string, std::vector<FuncId>, std::less<>> function_names_;
  std::map<std::string, VarId, std::less<>> variable_names_;

  std::map<Sort, ConstId> zeros_;
  std::map<Sort, FuncId> adds_;
  std::map<Sort, FuncId> negs_;
  // keyed by (result sort, middle object w): sigma(mul) = (w,v) x (u,w) -> (u,v)
  std::map<std::pair<Sort, ObjectId>, FuncId> muls_;

  uint64_t fresh_counter_ = 0;
};

}  // namespace opstat
