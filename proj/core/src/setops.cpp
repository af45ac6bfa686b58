#include "matset/setops.hpp"

#include <algorithm>

#include "matset/bisim.hpp"
#include "matset/surgery.hpp"
#include "setops_internal.hpp"

namespace matset {

namespace detail {

void require_set(const HfSet& x, const char* op) {
  if (x.is_atom()) {
    throw SetOpError(SetOpError::Kind::kAtomArgument,
                     std::string(op) + ": argument " + render(x) + " is an atom");
  }
}

void require_size(double count, const char* op) {
  if (count > static_cast<double>(kMaxConstructedMembers)) {
    throw SetOpError(SetOpError::Kind::kTooLarge, std::string(op) + ": result too large to build");
  }
}

}  // namespace detail

using detail::require_set;
using detail::require_size;

std::optional<HfSet> MaterialFn::at(const HfSet& argument) const {
  if (auto it = table_.find(argument); it != table_.end()) return it->second;
  return std::nullopt;
}

HfSet MaterialFn::apply(const HfSet& argument) const {
  if (auto value = at(argument)) return *value;
  throw SetOpError(SetOpError::Kind::kPartialFunction,
                   "function undefined at " + render(argument));
}

HfSet MaterialFn::domain() const {
  std::vector<HfSet> args;
  for (const auto& [a, v] : table_) args.push_back(a);
  return HfSet::set(std::move(args));
}

HfSet MaterialFn::graph() const {
  std::vector<HfSet> pairs;
  for (const auto& [a, v] : table_) pairs.push_back(direct::kpair(a, v));
  return HfSet::set(std::move(pairs));
}

MaterialFn MaterialFn::from_graph(const HfSet& graph) {
  require_set(graph, "MaterialFn::from_graph");
  MaterialFn f;
  for (const HfSet& member : graph.members()) {
    auto kp = as_kpair(member);
    if (!kp) {
      throw SetOpError(SetOpError::Kind::kPartialFunction, render(member) + " is not an ordered pair");
    }
    auto [it, inserted] = f.table_.emplace(kp->first, kp->second);
    if (!inserted && it->second != kp->second) {
      throw SetOpError(SetOpError::Kind::kPartialFunction,
                       "two values at " + render(kp->first));
    }
  }
  return f;
}

namespace direct {

HfSet pair(const HfSet& x, const HfSet& y) { return HfSet::set({x, y}); }

HfSet union_of(const HfSet& x) {
  require_set(x, "union");
  std::vector<HfSet> out;
  for (const HfSet& m : x.members()) {
    for (const HfSet& mm : m.members()) out.push_back(mm);
  }
  return HfSet::set(std::move(out));
}

HfSet kpair(const HfSet& x, const HfSet& y) { return direct::pair(direct::pair(x, x), direct::pair(x, y)); }

HfSet product(const HfSet& x, const HfSet& y) {
  require_set(x, "product");
  require_set(y, "product");
  require_size(static_cast<double>(x.size()) * static_cast<double>(y.size()), "product");
  std::vector<HfSet> out;
  for (const HfSet& a : x.members()) {
    for (const HfSet& b : y.members()) out.push_back(direct::kpair(a, b));
  }
  return HfSet::set(std::move(out));
}

HfSet func_space(const HfSet& x, const HfSet& y) {
  require_set(x, "exp");
  require_set(y, "exp");
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  require_size(std::pow(static_cast<double>(n), static_cast<double>(m)), "exp");
  if (m == 0) return HfSet::set({HfSet::empty()});
  if (n == 0) return HfSet::empty();
  std::vector<std::size_t> choice(m, 0);
  std::vector<HfSet> functions;
  std::vector<HfSet> graph(m);
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) graph[i] = direct::kpair(x.members()[i], y.members()[choice[i]]);
    functions.push_back(HfSet::set(graph));
    std::size_t i = 0;
    while (i < m && ++choice[i] == n) choice[i++] = 0;
    if (i == m) break;
  }
  return HfSet::set(std::move(functions));
}

HfSet mv_func_space(const HfSet& x, const HfSet& y) {
  require_set(x, "mvexp");
  require_set(y, "mvexp");
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  if (n >= 20) require_size(1e300, "mvexp");
  const std::size_t options = (std::size_t{1} << n) - 1;
  require_size(std::pow(static_cast<double>(options), static_cast<double>(m)), "mvexp");
  if (m == 0) return HfSet::set({HfSet::empty()});
  if (n == 0) return HfSet::empty();
  // choice[i] in 1..2^n-1 is the nonempty image set of the i-th member.
  std::vector<std::size_t> choice(m, 1);
  std::vector<HfSet> relations;
  std::vector<HfSet> pairs;
  for (;;) {
    pairs.clear();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (choice[i] >> j & 1) pairs.push_back(direct::kpair(x.members()[i], y.members()[j]));
      }
    }
    relations.push_back(HfSet::set(pairs));
    std::size_t i = 0;
    while (i < m && ++choice[i] > options) choice[i++] = 1;
    if (i == m) break;
  }
  return HfSet::set(std::move(relations));
}

HfSet powerset(const HfSet& x) {
  require_set(x, "pow");
  const std::size_t m = x.size();
  if (m >= 31) require_size(1e300, "pow");
  require_size(std::ldexp(1.0, static_cast<int>(m)), "pow");
  std::vector<HfSet> subsets;
  std::vector<HfSet> subset;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) subset.push_back(x.members()[i]);
    }
    subsets.push_back(HfSet::set(subset));
  }
  return HfSet::set(std::move(subsets));
}

HfSet tc(const HfSet& x) {
  require_set(x, "tc");
  return HfSet::set(hereditary_members(x));
}

HfSet vn(std::size_t n) {
  HfSet out = HfSet::empty();
  for (std::size_t i = 0; i < n; ++i) out = successor(out);
  return out;
}

HfSet omega_upto(std::size_t k) {
  std::vector<HfSet> numerals;
  HfSet current = HfSet::empty();
  for (std::size_t i = 0; i < k; ++i) {
    numerals.push_back(current);
    current = successor(current);
  }
  return HfSet::set(std::move(numerals));
}

HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env) {
  require_set(x, "sep");
  Env local = env;
  std::vector<HfSet> kept;
  for (const HfSet& a : x.members()) {
    local.insert_or_assign(var, a);
    if (eval(phi, local)) kept.push_back(a);
  }
  return HfSet::set(std::move(kept));
}

HfSet replacement_image(const HfSet& x, const SetFunction& f) {
  require_set(x, "image");
  std::vector<HfSet> images;
  for (const HfSet& a : x.members()) images.push_back(f(a));
  return HfSet::set(std::move(images));
}

HfSet choice_function(const HfSet& x) {
  require_set(x, "choice");
  std::vector<HfSet> pairs;
  for (const HfSet& z : x.members()) {
    detail::require_choosable(z);
    pairs.push_back(direct::kpair(z, z.members().front()));
  }
  return HfSet::set(std::move(pairs));
}

}  // namespace direct

namespace detail {

void require_choosable(const HfSet& z) {
  if (z.is_atom()) {
    throw SetOpError(SetOpError::Kind::kAtomMemberFound, "choice: member " + render(z) + " is an atom");
  }
  if (z.size() == 0) {
    throw SetOpError(SetOpError::Kind::kEmptyMemberFound, "choice: member {} has no elements");
  }
}

}  // namespace detail

namespace {

template <typename Surgery, typename Direct>
HfSet dispatch(Path path, const char* op, Surgery&& surgery, Direct&& direct_path) {
  switch (path) {
    case Path::kSurgery: return surgery();
    case Path::kDirect: return direct_path();
    case Path::kBoth: break;
  }
  HfSet a = surgery();
  HfSet b = direct_path();
  if (a != b) {
    throw SetOpError(SetOpError::Kind::kPathMismatch, std::string(op) + ": surgery gives " + render(a) +
                                                          ", direct gives " + render(b));
  }
  return b;
}

}  // namespace

HfSet empty() { return HfSet::empty(); }

HfSet pair(const HfSet& x, const HfSet& y, Path path) {
  return dispatch(path, "pair", [&] { return surgery::pair(x, y); }, [&] { return direct::pair(x, y); });
}

HfSet union_of(const HfSet& x, Path path) {
  return dispatch(path, "union", [&] { return surgery::union_of(x); }, [&] { return direct::union_of(x); });
}

HfSet kpair(const HfSet& x, const HfSet& y, Path path) {
  return dispatch(path, "kpair", [&] { return surgery::kpair(x, y); }, [&] { return direct::kpair(x, y); });
}

HfSet product(const HfSet& x, const HfSet& y, Path path) {
  return dispatch(path, "prod", [&] { return surgery::product(x, y); },
                  [&] { return direct::product(x, y); });
}

HfSet func_space(const HfSet& x, const HfSet& y, Path path) {
  return dispatch(path, "exp", [&] { return surgery::func_space(x, y); },
                  [&] { return direct::func_space(x, y); });
}

HfSet mv_func_space(const HfSet& x, const HfSet& y, Path path) {
  return dispatch(path, "mvexp", [&] { return surgery::mv_func_space(x, y); },
                  [&] { return direct::mv_func_space(x, y); });
}

HfSet powerset(const HfSet& x, Path path) {
  return dispatch(path, "pow", [&] { return surgery::powerset(x); }, [&] { return direct::powerset(x); });
}

HfSet tc(const HfSet& x, Path path) {
  return dispatch(path, "tc", [&] { return surgery::tc(x); }, [&] { return direct::tc(x); });
}

HfSet vn(std::size_t n, Path path) {
  return dispatch(path, "vn", [&] { return surgery::vn(n); }, [&] { return direct::vn(n); });
}

HfSet omega_upto(std::size_t k, Path path) {
  return dispatch(path, "omega", [&] { return surgery::omega_upto(k); },
                  [&] { return direct::omega_upto(k); });
}

HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env, Path path) {
  return dispatch(path, "sep", [&] { return surgery::separation(x, var, phi, env); },
                  [&] { return direct::separation(x, var, phi, env); });
}

HfSet replacement_image(const HfSet& x, const SetFunction& f, Path path) {
  return dispatch(path, "image", [&] { return surgery::replacement_image(x, f); },
                  [&] { return direct::replacement_image(x, f); });
}

HfSet replacement_image(const HfSet& x, const MaterialFn& f, Path path) {
  return replacement_image(x, SetFunction([&f](const HfSet& a) { return f.apply(a); }), path);
}

HfSet choice_function(const HfSet& x, Path path) {
  return dispatch(path, "choice", [&] { return surgery::choice_function(x); },
                  [&] { return direct::choice_function(x); });
}

HfSet mostowski(const WfApg& apg) { return canonicalize(ext_quotient(apg).apg); }

std::optional<std::pair<HfSet, HfSet>> as_kpair(const HfSet& s) {
  if (s.is_atom() || s.size() == 0 || s.size() > 2) return std::nullopt;
  // {{a}} or {{a},{a,b}} with a ≠ b.
  const HfSet& first = s.members()[0];
  if (first.is_atom() || first.size() != 1) return std::nullopt;
  const HfSet& a = first.members()[0];
  if (s.size() == 1) return std::pair{a, a};
  const HfSet& second = s.members()[1];
  if (second.is_atom() || second.size() != 2 || !second.contains(a)) return std::nullopt;
  const HfSet& b = second.members()[0] == a ? second.members()[1] : second.members()[0];
  return std::pair{a, b};
}

bool is_material_function(const HfSet& f, const HfSet& x, const HfSet& y) {
  if (f.is_atom() || x.is_atom() || y.is_atom()) return false;
  std::map<HfSet, HfSet> table;
  for (const HfSet& member : f.members()) {
    auto kp = as_kpair(member);
    if (!kp || !x.contains(kp->first) || !y.contains(kp->second)) return false;
    if (!table.emplace(kp->first, kp->second).second) return false;
  }
  return table.size() == x.size();
}

bool is_entire_relation(const HfSet& r, const HfSet& x, const HfSet& y) {
  if (r.is_atom() || x.is_atom() || y.is_atom()) return false;
  std::vector<HfSet> related;
  for (const HfSet& member : r.members()) {
    auto kp = as_kpair(member);
    if (!kp || !x.contains(kp->first) || !y.contains(kp->second)) return false;
    related.push_back(kp->first);
  }
  return HfSet::set(std::move(related)) == x;
}

std::optional<HfSet> apply(const HfSet& f, const HfSet& z) {
  for (const HfSet& member : f.members()) {
    auto kp = as_kpair(member);
    if (kp && kp->first == z) return kp->second;
  }
  return std::nullopt;
}

bool is_transitive(const HfSet& s) {
  if (s.is_atom()) return false;
  for (const HfSet& m : s.members()) {
    for (const HfSet& mm : m.members()) {
      if (!s.contains(mm)) return false;
    }
  }
  return true;
}

bool is_subset(const HfSet& a, const HfSet& b) {
  return std::all_of(a.members().begin(), a.members().end(), [&](const HfSet& m) { return b.contains(m); });
}

HfSet successor(const HfSet& x) {
  require_set(x, "successor");
  std::vector<HfSet> members(x.members().begin(), x.members().end());
  members.push_back(x);
  return HfSet::set(std::move(members));
}

}  // namespace matset
