#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "matset/fincat.hpp"
#include "matset/logic.hpp"
#include "matset/setops.hpp"
#include "oracles.hpp"

namespace matset::fincat {
namespace {

using oracle::numeral;

FinObj obj(std::size_t n) { return FinObj(numeral(n)); }

/// Every subset of {vn(0), vn(1), @a}: eight objects of size 0..3.
std::vector<FinObj> small_objects() {
  const HfSet pool[] = {numeral(0), numeral(1), HfSet::atom("a")};
  std::vector<FinObj> out;
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<HfSet> ms;
    for (unsigned i = 0; i < 3; ++i) {
      if (mask >> i & 1) ms.push_back(pool[i]);
    }
    out.emplace_back(HfSet::set(ms));
  }
  return out;
}

void expect_kind(FincatError::Kind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const FincatError& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(Objects, Construction) {
  expect_kind(FincatError::Kind::kNotASet, [] { FinObj(HfSet::atom("a")); });
  FinObj three = obj(3);
  EXPECT_EQ(three.size(), 3u);
  EXPECT_EQ(three.index_of(numeral(1)), std::optional<std::size_t>(1));
  EXPECT_FALSE(three.index_of(numeral(3)).has_value());
  EXPECT_EQ(initial().size(), 0u);
  EXPECT_EQ(terminal().carrier(), numeral(1));
}

TEST(Morphisms, ValidationAndGraphs) {
  expect_kind(FincatError::Kind::kInvalidMorphism, [] { FinMor(obj(2), obj(1), {0}); });
  expect_kind(FincatError::Kind::kInvalidMorphism, [] { FinMor(obj(2), obj(1), {0, 1}); });
  FinMor f(obj(2), obj(3), {2, 0});
  EXPECT_EQ(f.apply(numeral(0)), numeral(2));
  expect_kind(FincatError::Kind::kInvalidMorphism, [&] { f.apply(numeral(5)); });
  EXPECT_EQ(FinMor::from_graph(obj(2), obj(3), f.graph()), f);
  EXPECT_TRUE(is_material_function(f.graph(), numeral(2), numeral(3)));
  EXPECT_EQ(render(FinMor(obj(1), obj(1), {0})), "{{}} -> {{}} [{} |-> {}]");
}

TEST(Compose, Examples) {
  FinMor f(obj(2), obj(3), {2, 0});
  FinMor g(obj(3), obj(2), {1, 1, 0});
  EXPECT_EQ(compose(identity(obj(3)), f), f);
  EXPECT_EQ(compose(f, identity(obj(2))), f);
  FinMor gf = compose(g, f);
  EXPECT_EQ(std::vector<std::uint32_t>(gf.table().begin(), gf.table().end()), (std::vector<std::uint32_t>{0, 1}));
  expect_kind(FincatError::Kind::kDomainMismatch, [&] { compose(f, f); });
}

TEST(Compose, AssociativeOnSmallHoms) {
  auto objs = small_objects();
  std::mt19937_64 rng(127);
  std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    const FinObj &a = objs[pick(rng)], &b = objs[pick(rng)], &c = objs[pick(rng)], &d = objs[pick(rng)];
    auto fs = hom(a, b), gs = hom(b, c), hs = hom(c, d);
    for (const FinMor& f : fs) {
      for (const FinMor& g : gs) {
        for (const FinMor& h : hs) EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
      }
    }
  }
}

TEST(Hom, CountsAndElements) {
  EXPECT_EQ(hom(obj(2), obj(3)).size(), 9u);
  EXPECT_EQ(hom(initial(), obj(3)).size(), 1u);
  EXPECT_EQ(hom(obj(2), initial()).size(), 0u);
  EXPECT_EQ(elements(obj(4)).size(), 4u);
  EXPECT_EQ(element(obj(4), 2).apply(HfSet::empty()), numeral(2));
  expect_kind(FincatError::Kind::kTooLarge, [] { hom(obj(21), obj(2)); });
}

TEST(MonoEpi, Examples) {
  FinMor id = identity(obj(2));
  EXPECT_TRUE(is_mono(id));
  EXPECT_TRUE(is_regular_epi(id));
  FinMor constant(obj(2), obj(1), {0, 0});
  EXPECT_TRUE(is_regular_epi(constant));
  EXPECT_FALSE(is_mono(constant));
  FinMor incl = SubObj::from_set(obj(2), numeral(1)).inclusion();
  EXPECT_TRUE(is_mono(incl));
  EXPECT_FALSE(is_regular_epi(incl));
}

TEST(MonoEpi, ElementCharacterizations) {
  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      for (const FinMor& f : hom(a, b)) {
        EXPECT_EQ(is_mono(f), f.is_injective()) << render(f);
        EXPECT_EQ(is_regular_epi(f), f.is_surjective()) << render(f);
        EXPECT_EQ(inverse(f).has_value(), f.is_injective() && f.is_surjective());
        // Element-wise: monic iff every element of b factors in at most one way.
        bool at_most_one = true, every = true;
        for (const FinMor& y : elements(b)) {
          std::size_t ways = 0;
          for (const FinMor& x : elements(a)) ways += compose(f, x) == y;
          at_most_one = at_most_one && ways <= 1;
          every = every && ways >= 1;
        }
        EXPECT_EQ(is_mono(f), at_most_one);
        EXPECT_EQ(is_regular_epi(f), every);
      }
    }
  }
}

TEST(Initial, IffNoElements) {
  auto objs = small_objects();
  for (const FinObj& a : objs) EXPECT_EQ(is_initial(a, objs), elements(a).empty()) << render(a.carrier());
}

TEST(ImageFactor, Examples) {
  FinMor incl = SubObj::from_set(obj(3), numeral(2)).inclusion();
  ImageFactor m = image_factor(incl);
  EXPECT_TRUE(inverse(m.epi).has_value());

  FinMor constant(obj(3), obj(2), {1, 1, 1});
  ImageFactor c = image_factor(constant);
  EXPECT_EQ(c.mono.dom().size(), 1u);

  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      for (const FinMor& f : hom(a, b)) {
        ImageFactor i = image_factor(f);
        EXPECT_EQ(compose(i.mono, i.epi), f);
        EXPECT_TRUE(i.epi.is_surjective());
        EXPECT_TRUE(i.mono.is_injective());
        EXPECT_EQ(i.mono.dom().carrier(),
                  replacement_image(a.carrier(), [&](const HfSet& x) { return f.apply(x); }));
      }
    }
  }
}

TEST(Product, UniversalProperty) {
  EXPECT_EQ(product_obj(obj(2), obj(3)).obj.size(), 6u);
  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      if (a.size() * b.size() > 4) continue;
      Product p = product_obj(a, b);
      for (const FinObj& c : {obj(0), obj(1), obj(2)}) {
        for (const FinMor& f : hom(c, a)) {
          for (const FinMor& g : hom(c, b)) {
            std::size_t factorizations = 0;
            for (const FinMor& h : hom(c, p.obj)) {
              if (compose(p.p1, h) == f && compose(p.p2, h) == g) {
                ++factorizations;
                EXPECT_EQ(h, pairing(f, g));
              }
            }
            EXPECT_EQ(factorizations, 1u);
          }
        }
      }
    }
  }
}

TEST(Product, MapsActComponentwise) {
  FinMor f(obj(2), obj(3), {2, 0});
  FinMor g(obj(1), obj(2), {1});
  FinMor fg = product_map(f, g);
  Product src = product_obj(obj(2), obj(1));
  Product dst = product_obj(obj(3), obj(2));
  EXPECT_EQ(compose(dst.p1, fg), compose(f, src.p1));
  EXPECT_EQ(compose(dst.p2, fg), compose(g, src.p2));
}

TEST(Equalizer, UniversalProperty) {
  FinMor f(obj(3), obj(2), {0, 1, 1});
  EXPECT_EQ(equalizer(f, f).obj, obj(3));
  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      auto maps = hom(a, b);
      for (const FinMor& f1 : maps) {
        for (const FinMor& f2 : maps) {
          Equalizer e = equalizer(f1, f2);
          EXPECT_EQ(compose(f1, e.incl), compose(f2, e.incl));
          EXPECT_TRUE(e.incl.is_injective());
          for (const FinObj& c : {obj(1), obj(2)}) {
            for (const FinMor& h : hom(c, a)) {
              std::size_t ways = 0;
              for (const FinMor& k : hom(c, e.obj)) ways += compose(e.incl, k) == h;
              EXPECT_EQ(ways, compose(f1, h) == compose(f2, h) ? 1u : 0u);
            }
          }
        }
      }
    }
  }
}

TEST(Coproduct, UniversalProperty) {
  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      if (a.size() + b.size() > 4) continue;
      Coproduct s = coproduct(a, b);
      EXPECT_EQ(s.obj.size(), a.size() + b.size());
      for (const FinObj& c : {obj(1), obj(2)}) {
        for (const FinMor& f : hom(a, c)) {
          for (const FinMor& g : hom(b, c)) {
            std::size_t ways = 0;
            for (const FinMor& h : hom(s.obj, c)) {
              if (compose(h, s.i1) == f && compose(h, s.i2) == g) {
                ++ways;
                EXPECT_EQ(h, copairing(s, f, g));
              }
            }
            EXPECT_EQ(ways, 1u);
          }
        }
      }
    }
  }
}

TEST(Quotient, ParityClassesOfFour) {
  FinObj four = obj(4);
  FinMor parity(four, obj(2), {0, 1, 0, 1});
  SubObj rel = kernel_pair(parity);
  EXPECT_EQ(rel.size(), 8u);
  KernelQuotient q = quotient_kernel(four, rel);
  EXPECT_EQ(q.obj.size(), 2u);
  HfSet evens = HfSet::set({numeral(0), numeral(2)});
  HfSet odds = HfSet::set({numeral(1), numeral(3)});
  EXPECT_EQ(q.obj.carrier(), HfSet::set({evens, odds}));
  EXPECT_EQ(q.proj.apply(numeral(3)), odds);
  EXPECT_TRUE(q.proj.is_surjective());

  Product sq = product_obj(four, four);
  SubObj not_reflexive = SubObj::none(sq.obj);
  expect_kind(FincatError::Kind::kNotEquivalenceRelation, [&] { quotient_kernel(four, not_reflexive); });
}

TEST(Subobjects, LatticeAndComplement) {
  FinObj three = obj(3);
  auto subs = subobjects(three);
  EXPECT_EQ(subs.size(), 8u);
  for (const SubObj& s : subs) {
    SubObj c = complement(s);
    EXPECT_EQ(sub_union(s, c), SubObj::full(three));
    EXPECT_EQ(sub_intersection(s, c), SubObj::none(three));
    for (const SubObj& t : subs) {
      EXPECT_EQ(sub_le(s, t), is_subset(s.carrier(), t.carrier()));
      EXPECT_TRUE(sub_le(sub_intersection(s, t), s));
      EXPECT_TRUE(sub_le(s, sub_union(s, t)));
    }
  }
  expect_kind(FincatError::Kind::kNotASubset, [&] { SubObj::from_set(three, numeral(4)); });
  EXPECT_EQ(render(SubObj::from_set(three, numeral(1))), "{{}} <= {{},{{}},{{},{{}}}}");
}

TEST(DualImage, ExamplesAndAdjunction) {
  FinMor constant(obj(2), obj(3), {1, 1});
  EXPECT_EQ(dual_image(constant, SubObj::full(obj(2))), SubObj::full(obj(3)));
  SubObj d = dual_image(constant, SubObj::none(obj(2)));
  // Only vn(1) has a nonempty fibre, which the empty subobject misses.
  EXPECT_EQ(d.carrier(), HfSet::set({numeral(0), numeral(2)}));

  FinMor surj(obj(3), obj(1), {0, 0, 0});
  EXPECT_EQ(dual_image(surj, SubObj::none(obj(3))), SubObj::none(obj(1)));

  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      for (const FinMor& f : hom(a, b)) {
        for (const SubObj& s : subobjects(a)) {
          for (const SubObj& q : subobjects(b)) {
            EXPECT_EQ(sub_le(inverse_image(f, q), s), sub_le(q, dual_image(f, s)));
            EXPECT_EQ(sub_le(exists_image(f, s), q), sub_le(s, inverse_image(f, q)));
          }
        }
      }
    }
  }
}

TEST(Separate, SelectsSatisfyingElements) {
  const std::vector<Formula> formulas = {
      parse_formula("some z in x. true"),
      parse_formula("isset x"),
      parse_formula("all z in x. z in y"),
      parse_formula("x in y or x = y"),
  };
  const HfSet y = numeral(2);
  for (const HfSet& carrier : enumerate_rank(4)) {
    FinObj a(carrier);
    for (const Formula& phi : formulas) {
      SubObj s = separate(a, "x", phi, {{"y", y}});
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(s.contains(i), eval(phi, {{"x", a.members()[i]}, {"y", y}}));
      }
      EXPECT_EQ(s.carrier(), separation(carrier, "x", phi, {{"y", y}}));
    }
  }
}

TEST(PowerObject, ClassificationIsUnique) {
  EXPECT_EQ(power_object(initial()).obj.size(), 1u);
  EXPECT_EQ(power_object(obj(3)).obj.size(), 8u);
  for (const FinObj& a : small_objects()) {
    PowerObject p = power_object(a);
    EXPECT_EQ(p.obj.carrier(), powerset(a.carrier()));
    for (const SubObj& s : subobjects(a)) {
      std::size_t classifiers = 0;
      for (const FinMor& g : elements(p.obj)) {
        if (classified_by(p, a, g) == s) {
          ++classifiers;
          EXPECT_EQ(g, classify(p, s));
        }
      }
      EXPECT_EQ(classifiers, 1u) << render(s);
    }
  }
}

TEST(Exponential, TransposeIsUniqueBijection) {
  EXPECT_EQ(exponential_obj(initial(), obj(3)).obj.size(), 1u);
  EXPECT_EQ(exponential_obj(obj(2), obj(2)).obj.size(), 4u);
  for (const FinObj& a : {obj(0), obj(1), obj(2)}) {
    for (const FinObj& b : {obj(1), obj(2)}) {
      Exponential e = exponential_obj(a, b);
      EXPECT_EQ(e.obj.carrier(), func_space(a.carrier(), b.carrier()));
      for (const FinObj& c : {obj(1), obj(2)}) {
        Product ca = product_obj(c, a);
        for (const FinMor& h : hom(ca.obj, b)) {
          std::size_t ways = 0;
          for (const FinMor& z : hom(c, e.obj)) {
            if (untranspose(e, z) == h) {
              ++ways;
              EXPECT_EQ(z, transpose(e, c, h));
            }
          }
          EXPECT_EQ(ways, 1u);
        }
      }
    }
  }
}

TEST(Section, SplitsSurjections) {
  auto objs = small_objects();
  for (const FinObj& a : objs) {
    for (const FinObj& b : objs) {
      for (const FinMor& f : hom(a, b)) {
        if (!f.is_surjective()) {
          expect_kind(FincatError::Kind::kNotSurjective, [&] { section(f); });
          continue;
        }
        EXPECT_EQ(compose(f, section(f)), identity(b));
      }
    }
  }
}

TEST(WellPointed, Reports) {
  const FinObj one[] = {terminal()};
  Report r = check_well_pointed(one);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.lines.size(), 4u);
  for (const std::string& line : r.lines) EXPECT_EQ(line.rfind("PASS ", 0), 0u) << line;

  FinMor incl = SubObj::from_set(obj(2), numeral(1)).inclusion();
  EXPECT_TRUE(is_mono(incl));
  EXPECT_FALSE(inverse(incl).has_value());

  std::vector<FinObj> sample;
  for (const HfSet& s : enumerate_rank(3)) sample.emplace_back(s);
  Report full = check_well_pointed(sample);
  EXPECT_TRUE(full.ok) << full.to_string();
}

TEST(ToposLaws, SmallObjects) {
  auto objs = small_objects();
  Report r = check_topos_laws(objs);
  EXPECT_TRUE(r.ok) << r.to_string();
  EXPECT_GE(r.lines.size(), 10u);
}

TEST(ReportFormat, Lines) {
  Report r;
  r.record("law-a", std::nullopt);
  r.record("law-b", std::string("{}"));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.to_string(), "PASS law-a\nFAIL law-b {}\n");
}

}  // namespace
}  // namespace matset::fincat
