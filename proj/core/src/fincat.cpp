#include "matset/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "matset/setops.hpp"

namespace matset::fincat {

namespace {

constexpr std::size_t kMaxHom = std::size_t{1} << 20;

[[noreturn]] void fail(FincatError::Kind kind, const std::string& what) { throw FincatError(kind, what); }

std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > kMaxHom / base) fail(FincatError::Kind::kTooLarge, "hom-set too large");
    out *= base;
  }
  return base == 0 && exponent > 0 ? 0 : out;
}

/// Calls `visit(table)` for every table [0, n)^m in odometer order.
template <typename Visit>
void for_each_table(std::size_t m, std::size_t n, Visit&& visit) {
  checked_power(n, m);
  if (m > 0 && n == 0) return;
  std::vector<std::uint32_t> table(m, 0);
  for (;;) {
    visit(table);
    std::size_t i = 0;
    while (i < m && ++table[i] == n) table[i++] = 0;
    if (i == m) return;
  }
}

std::size_t index_in(const FinObj& a, const HfSet& element) {
  if (auto i = a.index_of(element)) return *i;
  fail(FincatError::Kind::kInvalidMorphism, render(element) + " is not a member of " + render(a.carrier()));
}

void require_same(const FinObj& a, const FinObj& b, const char* op) {
  if (a != b) {
    fail(FincatError::Kind::kDomainMismatch,
         std::string(op) + ": " + render(a.carrier()) + " differs from " + render(b.carrier()));
  }
}

}  // namespace

FinObj::FinObj(HfSet carrier) : carrier_(std::move(carrier)) {
  if (carrier_.is_atom()) fail(FincatError::Kind::kNotASet, render(carrier_) + " is an atom");
}

std::optional<std::size_t> FinObj::index_of(const HfSet& element) const {
  auto ms = members();
  auto it = std::lower_bound(ms.begin(), ms.end(), element);
  if (it == ms.end() || *it != element) return std::nullopt;
  return static_cast<std::size_t>(it - ms.begin());
}

FinMor::FinMor(FinObj dom, FinObj cod, std::vector<std::uint32_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) fail(FincatError::Kind::kInvalidMorphism, "table is not total");
  for (std::uint32_t v : table_) {
    if (v >= cod_.size()) fail(FincatError::Kind::kInvalidMorphism, "table value outside the codomain");
  }
}

FinMor FinMor::from_graph(FinObj dom, FinObj cod, const HfSet& graph) {
  if (!is_material_function(graph, dom.carrier(), cod.carrier())) {
    fail(FincatError::Kind::kInvalidMorphism, render(graph) + " is not a function");
  }
  std::vector<std::uint32_t> table(dom.size());
  for (const HfSet& member : graph.members()) {
    auto kp = as_kpair(member);
    table[index_in(dom, kp->first)] = static_cast<std::uint32_t>(index_in(cod, kp->second));
  }
  return FinMor(std::move(dom), std::move(cod), std::move(table));
}

HfSet FinMor::apply(const HfSet& element) const { return cod_.members()[table_[index_in(dom_, element)]]; }

HfSet FinMor::graph() const {
  std::vector<HfSet> pairs;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    pairs.push_back(kpair(dom_.members()[i], cod_.members()[table_[i]]));
  }
  return HfSet::set(std::move(pairs));
}

bool FinMor::is_injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (std::uint32_t v : table_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool FinMor::is_surjective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (std::uint32_t v : table_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SubObj::SubObj(FinObj of, std::vector<bool> mask) : of_(std::move(of)), mask_(std::move(mask)) {
  if (mask_.size() != of_.size()) fail(FincatError::Kind::kNotASubset, "mask size differs from object size");
}

SubObj SubObj::from_set(FinObj of, const HfSet& subset) {
  if (subset.is_atom()) fail(FincatError::Kind::kNotASubset, render(subset) + " is an atom");
  std::vector<bool> mask(of.size(), false);
  for (const HfSet& m : subset.members()) {
    auto i = of.index_of(m);
    if (!i) fail(FincatError::Kind::kNotASubset, render(m) + " is not a member of " + render(of.carrier()));
    mask[*i] = true;
  }
  return SubObj(std::move(of), std::move(mask));
}

SubObj SubObj::full(FinObj of) {
  std::vector<bool> mask(of.size(), true);
  return SubObj(std::move(of), std::move(mask));
}

SubObj SubObj::none(FinObj of) {
  std::vector<bool> mask(of.size(), false);
  return SubObj(std::move(of), std::move(mask));
}

std::size_t SubObj::size() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

HfSet SubObj::carrier() const {
  std::vector<HfSet> kept;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) kept.push_back(of_.members()[i]);
  }
  return HfSet::set(std::move(kept));
}

FinMor SubObj::inclusion() const {
  std::vector<std::uint32_t> table;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) table.push_back(static_cast<std::uint32_t>(i));
  }
  return FinMor(object(), of_, std::move(table));
}

std::string render(const FinMor& f) {
  std::ostringstream out;
  out << render(f.dom().carrier()) << " -> " << render(f.cod().carrier()) << " [";
  for (std::size_t i = 0; i < f.table().size(); ++i) {
    if (i) out << ", ";
    out << render(f.dom().members()[i]) << " |-> " << render(f.cod().members()[f[i]]);
  }
  out << "]";
  return out.str();
}

std::string render(const SubObj& s) { return render(s.carrier()) + " <= " + render(s.of().carrier()); }

FinMor compose(const FinMor& g, const FinMor& f) {
  require_same(f.cod(), g.dom(), "compose");
  std::vector<std::uint32_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = g[f[i]];
  return FinMor(f.dom(), g.cod(), std::move(table));
}

FinMor identity(const FinObj& a) {
  std::vector<std::uint32_t> table(a.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<std::uint32_t>(i);
  return FinMor(a, a, std::move(table));
}

FinObj initial() { return FinObj(); }

FinObj terminal() { return FinObj(vn(1)); }

FinMor to_terminal(const FinObj& a) { return FinMor(a, terminal(), std::vector<std::uint32_t>(a.size(), 0)); }

FinMor from_initial(const FinObj& a) { return FinMor(initial(), a, {}); }

std::vector<FinMor> hom(const FinObj& a, const FinObj& b) {
  std::vector<FinMor> out;
  for_each_table(a.size(), b.size(), [&](const std::vector<std::uint32_t>& t) { out.emplace_back(a, b, t); });
  return out;
}

std::vector<FinMor> elements(const FinObj& a) { return hom(terminal(), a); }

FinMor element(const FinObj& a, std::size_t i) {
  return FinMor(terminal(), a, {static_cast<std::uint32_t>(i)});
}

bool is_mono(const FinMor& f) {
  const std::size_t m = f.dom().size();
  for (std::size_t t = 0; t <= 2; ++t) {
    std::vector<std::vector<std::uint32_t>> tables;
    for_each_table(t, m, [&](const std::vector<std::uint32_t>& g) { tables.push_back(g); });
    for (std::size_t i = 0; i < tables.size(); ++i) {
      for (std::size_t j = i + 1; j < tables.size(); ++j) {
        bool same = true;
        for (std::size_t k = 0; k < t && same; ++k) same = f[tables[i][k]] == f[tables[j][k]];
        if (same) return false;
      }
    }
  }
  return true;
}

bool is_regular_epi(const FinMor& f) {
  const std::size_t m = f.dom().size();
  const std::size_t n = f.cod().size();
  for (std::size_t c = 0; c <= 2; ++c) {
    bool universal = true;
    for_each_table(m, c, [&](const std::vector<std::uint32_t>& g) {
      if (!universal) return;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (f[i] == f[j] && g[i] != g[j]) return;
        }
      }
      std::size_t factorizations = 0;
      for_each_table(n, c, [&](const std::vector<std::uint32_t>& u) {
        for (std::size_t i = 0; i < m; ++i) {
          if (u[f[i]] != g[i]) return;
        }
        ++factorizations;
      });
      universal = factorizations == 1;
    });
    if (!universal) return false;
  }
  return true;
}

std::optional<FinMor> inverse(const FinMor& f) {
  const FinMor id_dom = identity(f.dom());
  const FinMor id_cod = identity(f.cod());
  for (const FinMor& g : hom(f.cod(), f.dom())) {
    if (compose(g, f) == id_dom && compose(f, g) == id_cod) return g;
  }
  return std::nullopt;
}

bool is_initial(const FinObj& a, std::span<const FinObj> tests) {
  return std::all_of(tests.begin(), tests.end(), [&](const FinObj& t) { return hom(a, t).size() == 1; });
}

ImageFactor image_factor(const FinMor& f) {
  const FinObj image(replacement_image(f.dom().carrier(), [&f](const HfSet& x) { return f.apply(x); }));
  std::vector<std::uint32_t> epi(f.dom().size());
  for (std::size_t i = 0; i < epi.size(); ++i) {
    epi[i] = static_cast<std::uint32_t>(index_in(image, f.cod().members()[f[i]]));
  }
  return {FinMor(f.dom(), image, std::move(epi)), SubObj::from_set(f.cod(), image.carrier()).inclusion()};
}

Product product_obj(const FinObj& a, const FinObj& b) {
  const FinObj p(product(a.carrier(), b.carrier()));
  std::vector<std::uint32_t> t1;
  std::vector<std::uint32_t> t2;
  for (const HfSet& member : p.members()) {
    auto kp = as_kpair(member);
    t1.push_back(static_cast<std::uint32_t>(index_in(a, kp->first)));
    t2.push_back(static_cast<std::uint32_t>(index_in(b, kp->second)));
  }
  return {p, FinMor(p, a, std::move(t1)), FinMor(p, b, std::move(t2))};
}

FinMor pairing(const FinMor& f, const FinMor& g) {
  require_same(f.dom(), g.dom(), "pairing");
  const FinObj p(product(f.cod().carrier(), g.cod().carrier()));
  std::vector<std::uint32_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = static_cast<std::uint32_t>(
        index_in(p, kpair(f.cod().members()[f[i]], g.cod().members()[g[i]])));
  }
  return FinMor(f.dom(), p, std::move(table));
}

FinMor product_map(const FinMor& f, const FinMor& g) {
  const FinObj from(product(f.dom().carrier(), g.dom().carrier()));
  const FinObj to(product(f.cod().carrier(), g.cod().carrier()));
  std::vector<std::uint32_t> table;
  for (const HfSet& member : from.members()) {
    auto kp = as_kpair(member);
    table.push_back(static_cast<std::uint32_t>(index_in(to, kpair(f.apply(kp->first), g.apply(kp->second)))));
  }
  return FinMor(from, to, std::move(table));
}

Equalizer equalizer(const FinMor& f, const FinMor& g) {
  require_same(f.dom(), g.dom(), "equalizer");
  require_same(f.cod(), g.cod(), "equalizer");
  std::vector<bool> mask(f.dom().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = f[i] == g[i];
  const SubObj s(f.dom(), std::move(mask));
  return {s.object(), s.inclusion()};
}

Coproduct coproduct(const FinObj& a, const FinObj& b) {
  const HfSet left = vn(0);
  const HfSet right = vn(1);
  std::vector<HfSet> tagged;
  for (const HfSet& x : a.members()) tagged.push_back(kpair(left, x));
  for (const HfSet& y : b.members()) tagged.push_back(kpair(right, y));
  const FinObj sum(HfSet::set(std::move(tagged)));
  std::vector<std::uint32_t> t1;
  std::vector<std::uint32_t> t2;
  for (const HfSet& x : a.members()) t1.push_back(static_cast<std::uint32_t>(index_in(sum, kpair(left, x))));
  for (const HfSet& y : b.members()) t2.push_back(static_cast<std::uint32_t>(index_in(sum, kpair(right, y))));
  return {sum, FinMor(a, sum, std::move(t1)), FinMor(b, sum, std::move(t2))};
}

FinMor copairing(const Coproduct& sum, const FinMor& f, const FinMor& g) {
  require_same(sum.i1.dom(), f.dom(), "copairing");
  require_same(sum.i2.dom(), g.dom(), "copairing");
  require_same(f.cod(), g.cod(), "copairing");
  std::vector<std::uint32_t> table(sum.obj.size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) table[sum.i1[i]] = f[i];
  for (std::size_t i = 0; i < g.dom().size(); ++i) table[sum.i2[i]] = g[i];
  return FinMor(sum.obj, f.cod(), std::move(table));
}

KernelQuotient quotient_kernel(const FinObj& a, const SubObj& relation) {
  const Product p = product_obj(a, a);
  require_same(relation.of(), p.obj, "quotient_kernel");
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
  for (std::size_t k = 0; k < p.obj.size(); ++k) {
    if (relation.contains(k)) related[p.p1[k]][p.p2[k]] = true;
  }
  auto reject = [&](const std::string& why) { fail(FincatError::Kind::kNotEquivalenceRelation, why); };
  for (std::size_t i = 0; i < n; ++i) {
    if (!related[i][i]) reject("not reflexive at " + render(a.members()[i]));
    for (std::size_t j = 0; j < n; ++j) {
      if (related[i][j] != related[j][i]) reject("not symmetric");
      for (std::size_t k = 0; k < n; ++k) {
        if (related[i][j] && related[j][k] && !related[i][k]) reject("not transitive");
      }
    }
  }
  std::vector<HfSet> class_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<HfSet> cls;
    for (std::size_t j = 0; j < n; ++j) {
      if (related[i][j]) cls.push_back(a.members()[j]);
    }
    class_of[i] = HfSet::set(std::move(cls));
  }
  const FinObj classes(HfSet::set(class_of));
  std::vector<std::uint32_t> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = static_cast<std::uint32_t>(index_in(classes, class_of[i]));
  return {classes, FinMor(a, classes, std::move(table))};
}

SubObj kernel_pair(const FinMor& f) {
  const Product p = product_obj(f.dom(), f.dom());
  std::vector<bool> mask(p.obj.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = f[p.p1[k]] == f[p.p2[k]];
  return SubObj(p.obj, std::move(mask));
}

SubObj sub_union(const SubObj& s, const SubObj& t) {
  require_same(s.of(), t.of(), "sub_union");
  std::vector<bool> mask(s.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = s.contains(i) || t.contains(i);
  return SubObj(s.of(), std::move(mask));
}

SubObj sub_intersection(const SubObj& s, const SubObj& t) {
  require_same(s.of(), t.of(), "sub_intersection");
  std::vector<bool> mask(s.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = s.contains(i) && t.contains(i);
  return SubObj(s.of(), std::move(mask));
}

SubObj complement(const SubObj& s) {
  std::vector<bool> mask(s.mask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = !s.contains(i);
  return SubObj(s.of(), std::move(mask));
}

bool sub_le(const SubObj& s, const SubObj& t) {
  require_same(s.of(), t.of(), "sub_le");
  for (std::size_t i = 0; i < s.mask().size(); ++i) {
    if (s.contains(i) && !t.contains(i)) return false;
  }
  return true;
}

SubObj inverse_image(const FinMor& f, const SubObj& t) {
  require_same(f.cod(), t.of(), "inverse_image");
  std::vector<bool> mask(f.dom().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = t.contains(f[i]);
  return SubObj(f.dom(), std::move(mask));
}

SubObj exists_image(const FinMor& f, const SubObj& s) {
  require_same(f.dom(), s.of(), "exists_image");
  std::vector<bool> mask(f.cod().size(), false);
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (s.contains(i)) mask[f[i]] = true;
  }
  return SubObj(f.cod(), std::move(mask));
}

SubObj dual_image(const FinMor& f, const SubObj& s) {
  require_same(f.dom(), s.of(), "dual_image");
  std::vector<bool> mask(f.cod().size(), true);
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (!s.contains(i)) mask[f[i]] = false;
  }
  return SubObj(f.cod(), std::move(mask));
}

std::vector<SubObj> subobjects(const FinObj& a) {
  const std::size_t n = a.size();
  checked_power(2, n);
  std::vector<SubObj> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = (bits >> i & 1) != 0;
    out.emplace_back(a, std::move(mask));
  }
  return out;
}

SubObj separate(const FinObj& a, const std::string& var, const Formula& phi, const Env& env) {
  return SubObj::from_set(a, separation(a.carrier(), var, phi, env));
}

PowerObject power_object(const FinObj& a) {
  const FinObj pa(powerset(a.carrier()));
  const Product p = product_obj(a, pa);
  std::vector<bool> mask(p.obj.size());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    mask[k] = pa.members()[p.p2[k]].contains(a.members()[p.p1[k]]);
  }
  return {pa, SubObj(p.obj, std::move(mask))};
}

FinMor classify(const PowerObject& power, const SubObj& s) {
  return element(power.obj, index_in(power.obj, s.carrier()));
}

SubObj classified_by(const PowerObject& power, const FinObj& a, const FinMor& g) {
  require_same(g.cod(), power.obj, "classified_by");
  const HfSet named = power.obj.members()[g[0]];
  std::vector<bool> mask(a.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = power.membership.contains(index_in(power.membership.of(), kpair(a.members()[i], named)));
  }
  return SubObj(a, std::move(mask));
}

Exponential exponential_obj(const FinObj& a, const FinObj& b) {
  const FinObj e(func_space(a.carrier(), b.carrier()));
  const Product p = product_obj(e, a);
  std::vector<std::uint32_t> table(p.obj.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto value = matset::apply(e.members()[p.p1[k]], a.members()[p.p2[k]]);
    table[k] = static_cast<std::uint32_t>(index_in(b, *value));
  }
  return {e, FinMor(p.obj, b, std::move(table)), b, a};
}

FinMor transpose(const Exponential& e, const FinObj& c, const FinMor& h) {
  require_same(h.dom(), FinObj(product(c.carrier(), e.exponent.carrier())), "transpose");
  require_same(h.cod(), e.base, "transpose");
  std::vector<std::uint32_t> table(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<HfSet> graph;
    for (const HfSet& x : e.exponent.members()) graph.push_back(kpair(x, h.apply(kpair(c.members()[i], x))));
    table[i] = static_cast<std::uint32_t>(index_in(e.obj, HfSet::set(std::move(graph))));
  }
  return FinMor(c, e.obj, std::move(table));
}

FinMor untranspose(const Exponential& e, const FinMor& z) {
  require_same(z.cod(), e.obj, "untranspose");
  return compose(e.eval, product_map(z, identity(e.exponent)));
}

FinMor section(const FinMor& f) {
  std::vector<std::uint32_t> table(f.cod().size());
  std::vector<bool> hit(f.cod().size(), false);
  for (std::size_t i = f.dom().size(); i-- > 0;) {
    table[f[i]] = static_cast<std::uint32_t>(i);
    hit[f[i]] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
    fail(FincatError::Kind::kNotSurjective, render(f) + " is not surjective");
  }
  return FinMor(f.cod(), f.dom(), std::move(table));
}

void Report::record(const std::string& law, const std::optional<std::string>& counterexample) {
  if (counterexample) {
    lines.push_back("FAIL " + law + " " + *counterexample);
    ok = false;
  } else {
    lines.push_back("PASS " + law);
  }
}

std::string Report::to_string() const {
  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

Report check_well_pointed(std::span<const FinObj> sample) {
  Report report;
  const FinObj one = terminal();

  std::optional<std::string> bad;
  for (const FinObj& a : sample) {
    for (const FinObj& b : sample) {
      if (bad) break;
      for (const FinMor& f : hom(a, b)) {
        if (!is_mono(f)) continue;
        std::set<std::uint32_t> hit(f.table().begin(), f.table().end());
        if (hit.size() == b.size() && !inverse(f)) {
          bad = render(f);
          break;
        }
      }
    }
  }
  report.record("mono-bijective-on-elements-is-iso", bad);

  bad.reset();
  for (const FinObj& x : sample) {
    const FinMor bang = to_terminal(x);
    if (!is_regular_epi(bang)) continue;
    const auto points = elements(x);
    const bool splits = std::any_of(points.begin(), points.end(),
                                    [&](const FinMor& s) { return compose(bang, s) == identity(one); });
    if (!splits) {
      bad = render(bang);
      break;
    }
  }
  report.record("terminal-projective", bad);

  bad.reset();
  const auto subs = subobjects(one);
  for (const SubObj& s : subs) {
    for (const SubObj& t : subs) {
      if (sub_union(s, t) == SubObj::full(one) && s != SubObj::full(one) && t != SubObj::full(one)) {
        bad = render(s) + " | " + render(t);
      }
    }
  }
  report.record("terminal-indecomposable", bad);

  bad.reset();
  if (!hom(one, initial()).empty()) bad = render(hom(one, initial()).front());
  report.record("terminal-not-initial", bad);
  return report;
}

namespace {

/// eval ∘ (z × id_a) by table arithmetic; `grid` maps (c index, a index) to
/// the c × a index and `eval_grid` maps (b^a index, a index) to b.
std::vector<std::uint32_t> untranspose_table(std::span<const std::uint32_t> z,
                                             const std::vector<std::vector<std::uint32_t>>& grid,
                                             const std::vector<std::vector<std::uint32_t>>& eval_grid,
                                             std::size_t product_size) {
  std::vector<std::uint32_t> h(product_size);
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    for (std::size_t ai = 0; ai < grid[ci].size(); ++ai) h[grid[ci][ai]] = eval_grid[z[ci]][ai];
  }
  return h;
}

std::vector<std::vector<std::uint32_t>> product_grid(const Product& p, std::size_t left, std::size_t right) {
  std::vector<std::vector<std::uint32_t>> grid(left, std::vector<std::uint32_t>(right));
  for (std::size_t k = 0; k < p.obj.size(); ++k) grid[p.p1[k]][p.p2[k]] = static_cast<std::uint32_t>(k);
  return grid;
}

}  // namespace

Report check_topos_laws(std::span<const FinObj> objects) {
  Report report;
  std::optional<std::string> regular_epi, mono, iso, splitting, image;
  for (const FinObj& a : objects) {
    for (const FinObj& b : objects) {
      for (const FinMor& f : hom(a, b)) {
        if (!regular_epi && is_regular_epi(f) != f.is_surjective()) regular_epi = render(f);
        if (!mono && is_mono(f) != f.is_injective()) mono = render(f);
        if (!iso && inverse(f).has_value() != (f.is_injective() && f.is_surjective())) iso = render(f);
        if (!splitting && f.is_surjective() && compose(f, section(f)) != identity(b)) splitting = render(f);
        if (!image) {
          const ImageFactor fac = image_factor(f);
          if (compose(fac.mono, fac.epi) != f || !fac.epi.is_surjective() || !fac.mono.is_injective()) {
            image = render(f);
          }
        }
      }
    }
  }
  report.record("regular-epi-iff-surjective", regular_epi);
  report.record("mono-iff-injective", mono);
  report.record("iso-iff-bijective", iso);
  report.record("epi-splitting", splitting);
  report.record("image-factorization", image);

  std::optional<std::string> order, initial_law, boolean, classification, adjunction;
  for (const FinObj& a : objects) {
    if (!initial_law && is_initial(a, objects) != (a.size() == 0)) initial_law = render(a.carrier());
    const auto subs = subobjects(a);
    for (const SubObj& s : subs) {
      const FinMor si = s.inclusion();
      for (const SubObj& t : subs) {
        const FinMor ti = t.inclusion();
        const auto maps = hom(si.dom(), ti.dom());
        const bool factors =
            std::any_of(maps.begin(), maps.end(), [&](const FinMor& m) { return compose(ti, m) == si; });
        if (!order && factors != sub_le(s, t)) order = render(s) + " vs " + render(t);
      }
      const SubObj c = complement(s);
      if (!boolean && (sub_union(s, c) != SubObj::full(a) || sub_intersection(s, c) != SubObj::none(a))) {
        boolean = render(s);
      }
    }
    const PowerObject power = power_object(a);
    for (const SubObj& s : subs) {
      std::size_t naming = 0;
      for (const FinMor& g : elements(power.obj)) naming += classified_by(power, a, g) == s ? 1 : 0;
      if (!classification && (naming != 1 || classified_by(power, a, classify(power, s)) != s)) {
        classification = render(s);
      }
    }
    for (const FinObj& b : objects) {
      const auto cod_subs = subobjects(b);
      for (const FinMor& f : hom(a, b)) {
        for (const SubObj& s : subs) {
          const SubObj forall = dual_image(f, s);
          for (const SubObj& q : cod_subs) {
            if (!adjunction && sub_le(inverse_image(f, q), s) != sub_le(q, forall)) {
              adjunction = render(f) + " on " + render(s) + ", " + render(q);
            }
          }
        }
      }
    }
  }
  report.record("subobject-order-iff-containment", order);
  report.record("initial-iff-empty", initial_law);
  report.record("boolean-complement", boolean);
  report.record("power-object-classification", classification);
  report.record("dual-image-adjunction", adjunction);

  std::optional<std::string> transposes;
  for (const FinObj& a : objects) {
    for (const FinObj& b : objects) {
      const Exponential e = exponential_obj(a, b);
      const Product ea = product_obj(e.obj, a);
      std::vector<std::vector<std::uint32_t>> eval_grid(e.obj.size(), std::vector<std::uint32_t>(a.size()));
      for (std::size_t k = 0; k < ea.obj.size(); ++k) eval_grid[ea.p1[k]][ea.p2[k]] = e.eval[k];
      for (const FinObj& c : objects) {
        if (transposes) break;
        const Product ca = product_obj(c, a);
        const auto grid = product_grid(ca, c.size(), a.size());
        const std::size_t expected = checked_power(b.size(), ca.obj.size());
        std::set<std::vector<std::uint32_t>> seen;
        std::size_t checked = 0;
        for_each_table(c.size(), e.obj.size(), [&](const std::vector<std::uint32_t>& z) {
          if (transposes) return;
          auto h = untranspose_table(z, grid, eval_grid, ca.obj.size());
          // Spot-check the table arithmetic against the library path.
          if (checked++ < 8) {
            const FinMor zm(c, e.obj, z);
            const FinMor hm = untranspose(e, zm);
            if (std::vector<std::uint32_t>(hm.table().begin(), hm.table().end()) != h ||
                transpose(e, c, hm) != zm) {
              transposes = render(zm);
              return;
            }
          }
          if (!seen.insert(std::move(h)).second) transposes = render(FinMor(c, e.obj, z));
        });
        if (!transposes && seen.size() != expected) {
          transposes = "hom(" + render(c.carrier()) + " x " + render(a.carrier()) + ", " + render(b.carrier()) +
                       ") has untransposed maps";
        }
      }
    }
  }
  report.record("exponential-transpose", transposes);
  return report;
}

}  // namespace matset::fincat
