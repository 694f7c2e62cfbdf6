#include "opstat/signature.hpp"

namespace opstat {

void Signature::check_name_free(const std::string& name) const {
  if (object_names_.count(name) || constant_names_.count(name) ||
      function_names_.count(name) || variable_names_.count(name)) {
    throw UnknownSymbolError("identifier '" + name + "' is already declared");
  }
}

ObjectId Signature::add_object(const std::string& name) {
  check_name_free(name);
  ObjectId id{static_cast<uint32_t>(objects_.size())};
  objects_.push_back(name);
  object_names_.emplace(name, id);
  ensure_builtin_symbols();
  return id;
}

void Signature::ensure_builtin_symbols() {
  // One zero constant per sort and the arithmetic symbols for every
  // applicable sort combination. Idempotent so object addition can call it.
  for (uint32_t u = 0; u < objects_.size(); ++u) {
    for (uint32_t v = 0; v < objects_.size(); ++v) {
      Sort s{ObjectId{u}, ObjectId{v}};
      if (!zeros_.count(s)) {
        ConstId id{static_cast<uint32_t>(constants_.size())};
        constants_.push_back(ConstInfo{"0", s, true});
        zeros_.emplace(s, id);
      }
      if (!adds_.count(s)) {
        FuncId id{static_cast<uint32_t>(functions_.size())};
        functions_.push_back(FuncInfo{"+", FunctionSort{{s, s}, s}, ArithKind::Add});
        adds_.emplace(s, id);
      }
      if (!negs_.count(s)) {
        FuncId id{static_cast<uint32_t>(functions_.size())};
        functions_.push_back(FuncInfo{"-", FunctionSort{{s}, s}, ArithKind::Neg});
        negs_.emplace(s, id);
      }
    }
  }
  for (uint32_t u = 0; u < objects_.size(); ++u) {
    for (uint32_t v = 0; v < objects_.size(); ++v) {
      for (uint32_t w = 0; w < objects_.size(); ++w) {
        Sort result{ObjectId{u}, ObjectId{v}};
        auto key = std::make_pair(result, ObjectId{w});
        if (!muls_.count(key)) {
          Sort left{ObjectId{w}, ObjectId{v}};
          Sort right{ObjectId{u}, ObjectId{w}};
          FuncId id{static_cast<uint32_t>(functions_.size())};
          functions_.push_back(FuncInfo{"*", FunctionSort{{left, right}, result}, ArithKind::Mul});
          muls_.emplace(key, id);
        }
      }
    }
  }
}

ConstId Signature::add_constant(const std::string& name, Sort sort) {
  check_name_free(name);
  if (!valid(sort.src) || !valid(sort.tgt)) {
    throw UnknownSymbolError("constant '" + name + "' uses an undeclared object symbol");
  }
  ConstId id{static_cast<uint32_t>(constants_.size())};
  constants_.push_back(ConstInfo{name, sort, false});
  constant_names_.emplace(name, id);
  return id;
}

FuncId Signature::add_function(const std::string& name, FunctionSort sort) {
  if (sort.args.empty()) throw SortError("function '" + name + "' must take at least one argument");
  if (object_names_.count(name) || constant_names_.count(name) || variable_names_.count(name)) {
    throw UnknownSymbolError("identifier '" + name + "' is already declared");
  }
  for (const Sort& s : sort.args) {
    if (!valid(s.src) || !valid(s.tgt)) {
      throw UnknownSymbolError("function '" + name + "' uses an undeclared object symbol");
    }
  }
  if (!valid(sort.result.src) || !valid(sort.result.tgt)) {
    throw UnknownSymbolError("function '" + name + "' uses an undeclared object symbol");
  }
  // Overloads share a name but must have distinct argument sorts.
  for (FuncId prev : find_functions(name)) {
    if (function(prev).sort.args == sort.args) {
      throw UnknownSymbolError("function '" + name + "' is already declared at these argument sorts");
    }
  }
  FuncId id{static_cast<uint32_t>(functions_.size())};
  functions_.push_back(FuncInfo{name, std::move(sort), ArithKind::None});
  function_names_[name].push_back(id);
  return id;
}

VarId Signature::add_variable(const std::string& name, Sort sort) {
  check_name_free(name);
  if (!valid(sort.src) || !valid(sort.tgt)) {
    throw UnknownSymbolError("variable '" + name + "' uses an undeclared object symbol");
  }
  VarId id{static_cast<uint32_t>(variables_.size())};
  variables_.push_back(VarInfo{name, sort});
  variable_names_.emplace(name, id);
  return id;
}

ConstId Signature::fresh_constant(std::string_view base, Sort sort) {
  std::string name = "$" + std::string(base) + std::to_string(++fresh_counter_);
  ConstId id{static_cast<uint32_t>(constants_.size())};
  constants_.push_back(ConstInfo{name, sort, false});
  constant_names_.emplace(name, id);
  return id;
}

FuncId Signature::fresh_function(std::string_view base, FunctionSort sort) {
  std::string name = "$" + std::string(base) + std::to_string(++fresh_counter_);
  FuncId id{static_cast<uint32_t>(functions_.size())};
  functions_.push_back(FuncInfo{name, std::move(sort), ArithKind::None});
  function_names_[name].push_back(id);
  return id;
}

VarId Signature::fresh_variable(std::string_view base, Sort sort) {
  std::string name = "$" + std::string(base) + std::to_string(++fresh_counter_);
  VarId id{static_cast<uint32_t>(variables_.size())};
  variables_.push_back(VarInfo{name, sort});
  variable_names_.emplace(name, id);
  return id;
}

std::optional<ObjectId> Signature::find_object(std::string_view name) const {
  auto it = object_names_.find(name);
  if (it == object_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConstId> Signature::find_constant(std::string_view name) const {
  auto it = constant_names_.find(name);
  if (it == constant_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<VarId> Signature::find_variable(std::string_view name) const {
  auto it = variable_names_.find(name);
  if (it == variable_names_.end()) return std::nullopt;
  return it->second;
}

std::vector<FuncId> Signature::find_functions(std::string_view name) const {
  auto it = function_names_.find(name);
  if (it == function_names_.end()) return {};
  return it->second;
}

std::optional<FuncId> Signature::resolve_function(std::string_view name,
                                                  const std::vector<Sort>& args) const {
  for (FuncId id : find_functions(name)) {
    if (function(id).sort.args == args) return id;
  }
  return std::nullopt;
}

ConstId Signature::zero(Sort sort) const {
  auto it = zeros_.find(sort);
  if (it == zeros_.end()) throw UnknownSymbolError("no zero constant for this sort");
  return it->second;
}

FuncId Signature::add_symbol(Sort sort) const {
  auto it = adds_.find(sort);
  if (it == adds_.end()) throw UnknownSymbolError("no + symbol for this sort");
  return it->second;
}

FuncId Signature::neg_symbol(Sort sort) const {
  auto it = negs_.find(sort);
  if (it == negs_.end()) throw UnknownSymbolError("no - symbol for this sort");
  return it->second;
}

FuncId Signature::mul_symbol(Sort left, Sort right) const {
  if (left.src != right.tgt) throw SortError("composition sorts do not match");
  Sort result{right.src, left.tgt};
  auto it = muls_.find(std::make_pair(result, left.src));
  if (it == muls_.end()) throw UnknownSymbolError("no * symbol for these sorts");
  return it->second;
}

}  // namespace opstat
