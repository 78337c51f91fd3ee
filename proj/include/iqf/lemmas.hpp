#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "iqf/lie.hpp"
#include "iqf/normalization.hpp"
#include "iqf/reference_systems.hpp"
#include "iqf/stabilizers.hpp"

namespace iqf {

struct CheckItem {
  std::string group;
  std::string item;
  bool passed = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Tables of unimodular subalgebras containing H_0 / H_alpha

struct TableEntry {
  std::string id;
  Translation translation = Translation::none;
  Scalar param;  // t for K_t, beta for P_beta, alpha for A/B
  bool has_param = false;
};

inline Subalgebra materialize(const TableEntry& e) {
  if (!e.has_param) return catalog(e.id, {}, e.translation);
  const Scalar p[1] = {e.param};
  return catalog(e.id, p, e.translation);
}

/// Unimodular subalgebras of sl(3) ⋉ R³ containing H_0 (27 families).
inline std::vector<TableEntry> table_containing_h0(const Scalar& t, const Scalar& beta) {
  using T = Translation;
  std::vector<TableEntry> out;
  for (const char* id : {"V1", "V", "W"})
    for (T tr : {T::none, T::line, T::plane, T::full}) out.push_back({id, tr, {}, false});
  out.push_back({"K_t", T::none, t, true});
  out.push_back({"K_t", T::full, t, true});
  for (T tr : {T::none, T::line, T::full}) out.push_back({"Q1", tr, {}, false});
  for (T tr : {T::none, T::plane, T::full}) out.push_back({"Q2", tr, {}, false});
  out.push_back({"N", T::none, {}, false});
  out.push_back({"N", T::full, {}, false});
  out.push_back({"N1", T::line, {}, false});
  out.push_back({"N2", T::plane, {}, false});
  out.push_back({"sl3", T::none, {}, false});
  out.push_back({"sl3", T::full, {}, false});
  out.push_back({"P_beta", T::none, beta, true});
  return out;
}

/// Unimodular subalgebras containing H_alpha for alpha ≠ 0 (16 families).
inline std::vector<TableEntry> table_containing_h_alpha(const Scalar& alpha, const Scalar& t, const Scalar& beta) {
  using T = Translation;
  std::vector<TableEntry> out;
  for (const char* id : {"V1", "V", "W"})
    for (T tr : {T::plane, T::full}) out.push_back({id, tr, {}, false});
  out.push_back({"K_t", T::full, t, true});
  out.push_back({"Q1", T::full, {}, false});
  out.push_back({"Q2", T::plane, {}, false});
  out.push_back({"Q2", T::full, {}, false});
  out.push_back({"N", T::full, {}, false});
  out.push_back({"N2", T::plane, {}, false});
  out.push_back({"sl3", T::full, {}, false});
  out.push_back({"A_alpha", T::none, alpha, true});
  out.push_back({"B_alpha", T::none, alpha, true});
  out.push_back({"P_beta", T::none, beta, true});
  return out;
}

inline Subalgebra h_alpha_algebra(const Scalar& alpha) {
  const Scalar p[1] = {alpha};
  return catalog("H_alpha", p);
}

/// Parameter samples used by the sweeps.
inline std::vector<Scalar> sweep_alphas() { return {Scalar(1), Scalar::sqrt_of(2), Scalar(Rational(-3, 2))}; }
inline std::vector<Scalar> sweep_ts() { return {Scalar(0), Scalar(1), Scalar(-2)}; }

// ---------------------------------------------------------------------------

namespace detail {

class Recorder {
 public:
  void check(const std::string& group, const std::string& item, bool ok, std::string detail = {}) {
    items_.push_back({group, item, ok, std::move(detail)});
  }
  template <class F>
  void guarded(const std::string& group, const std::string& item, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      items_.push_back({group, item, false, std::string("raised: ") + e.what()});
    }
  }
  std::vector<CheckItem> take() { return std::move(items_); }

 private:
  std::vector<CheckItem> items_;
};

// A few fixed rational elements of SO(x₁² + x₂² − x₃²).
inline std::vector<Mat> lorentz_samples() {
  return {cayley(lie::h(Rational(1, 2), 0, 0).matrix()), cayley(lie::h(0, Rational(1, 3), 0).matrix()),
          cayley(lie::h(0, 0, Rational(-2, 5)).matrix()),
          cayley(lie::h(Rational(1, 4), Rational(1, 5), Rational(-1, 7)).matrix())};
}

inline std::string str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

}  // namespace detail

inline std::vector<CheckItem> lemma_suite() {
  detail::Recorder rec;
  const PairSystem wp = worked_pair();
  const InhomogeneousForm wf = wp.form();
  const Mat& sigma = wp.q.gram();

  // Affine stabilizer lift (g, gξ − ξ)
  {
    const std::string grp = "stabilizer_lift";
    rec.guarded(grp, "lifts preserve Q_xi", [&] {
      bool ok = true;
      for (const auto& g : detail::lorentz_samples()) ok = ok && preserves_pair(lift_joint(g, wp.q, wp.xi), wf);
      rec.check(grp, "lifts preserve Q_xi", ok);
    });
    rec.guarded(grp, "lift is a homomorphism", [&] {
      const auto s = detail::lorentz_samples();
      bool ok = true;
      for (const auto& a : s)
        for (const auto& b : s)
          ok = ok && lift_joint(a * b, wp.q, wp.xi) == lift_joint(a, wp.q, wp.xi) * lift_joint(b, wp.q, wp.xi);
      rec.check(grp, "lift is a homomorphism", ok);
    });
    rec.guarded(grp, "stabilizer algebra of Q_xi is conjugate of so(2,1)", [&] {
      // (g, −ξ) so(2,1) (g, −ξ)⁻¹ with λQ(gx) = x₁² + x₂² − x₃²
      const SingleCertificate sc = normalize_single(wp.q, wp.xi);
      std::vector<LieElement> conj;
      for (const auto& x : lie::so21_basis()) conj.push_back(adjoint(sc.map, x));
      const Subalgebra stab = stabilizer_algebra(wf);
      rec.check(grp, "stabilizer algebra of Q_xi is conjugate of so(2,1)",
                stab.dim() == 3 && same_span(stab.span(), Span(conj)), "dim " + std::to_string(stab.dim()));
    });
    rec.guarded(grp, "conjugation formula", [&] {
      const SingleCertificate sc = normalize_single(wp.q, wp.xi);
      const Mat& g = sc.map.linear_part();
      bool ok = true;
      for (const auto& h : detail::lorentz_samples()) {
        const Mat ghg = g * h * inverse(g);
        const AffineMap lhs = sc.map * AffineMap::linear(h) * inverse(sc.map);
        ok = ok && lhs == AffineMap(ghg, ghg * wp.xi - wp.xi) && preserves_pair(lhs, wf);
      }
      rec.check(grp, "conjugation formula", ok);
    });
  }

  // Unipotent generation of so(2,1)
  {
    const std::string grp = "unipotent_generation";
    const LieElement a = lie::h(1, 1, 0), b = lie::h(1, 0, 1);
    rec.check(grp, "generators are nilpotent", is_nilpotent(a.matrix()) && is_nilpotent(b.matrix()));
    rec.check(grp, "bracket is h(1,1,1)", bracket(a, b) == lie::h(1, 1, 1));
    const Subalgebra c = bracket_closure({a, b});
    rec.check(grp, "closure has dimension 3", c.dim() == 3, "dim " + std::to_string(c.dim()));
    rec.check(grp, "closure is so(2,1)", same_span(c.span(), Span(lie::so21_basis())));
  }

  // Centralizer of the stabilizer of Q_xi
  {
    const std::string grp = "centralizer";
    rec.guarded(grp, "centralizer is {(cI, (c-1)xi)}", [&] {
      const NormalizationCertificate cert = normalize_pair(wp.q, wp.xi, wp.l);
      std::vector<AffineMap> gens;
      for (const Scalar& t : {Scalar(1), Scalar::sqrt_of(2), Scalar(-1)}) gens.push_back(conjugated_flow(cert, t));
      for (const auto& g : detail::lorentz_samples()) gens.push_back(lift_joint(g, wp.q, wp.xi));
      const CentralizerSpace cs = centralizer_solve(gens);
      bool ok = cs.basis.size() == 1;
      if (ok) {
        const AffinePair& k = cs.basis.front();
        // k must be a multiple of (I, ξ) and the particular solution (I,0) + s(I, ξ)
        const Scalar c = k.linear(0, 0);
        ok = !c.is_zero() && k.linear == c * Mat::identity(3) && k.translation == c * wp.xi;
        const Scalar s = cs.particular.linear(0, 0) - Scalar(1);
        ok = ok && cs.particular.linear == (Scalar(1) + s) * Mat::identity(3) &&
             cs.particular.translation == s * wp.xi;
      }
      rec.check(grp, "centralizer is {(cI, (c-1)xi)}", ok, "kernel dim " + std::to_string(cs.basis.size()));
    });
  }

  // so(2,1) is maximal in sl(3)
  {
    const std::string grp = "so21_maximal";
    const auto tri = lie::sl2_triple();
    const LieElement a(tri.a), u(tri.u), v(tri.v);
    rec.check(grp, "[u,a] = 2u", bracket(u, a) == Scalar(2) * u);
    rec.check(grp, "[v,a] = -2v", bracket(v, a) == Scalar(-2) * v);
    rec.check(grp, "[v,u] = a", bracket(v, u) == a);
    rec.check(grp, "a, u, v lie in so(2,1)",
              lie::preserves_gram(tri.a, sigma) && lie::preserves_gram(tri.u, sigma) &&
                  lie::preserves_gram(tri.v, sigma));
    rec.check(grp, "a, u, v form a basis of so(2,1)", same_span(Span({a, u, v}), Span(lie::so21_basis())));
    const Subalgebra sl3 = catalog("sl3");
    const auto ker = ad_kernel(u, sl3);
    std::vector<LieElement> display;
    for (const auto& [p, q] : {std::pair{1, 0}, std::pair{0, 1}}) {
      const Scalar sp(p), sq(q);
      display.emplace_back(Mat{{0, sp, sp}, {-sp, sq, sq}, {sp, -sq, -sq}});
    }
    rec.check(grp, "ker ad(u) in sl(3) has dimension 2", ker.size() == 2, "dim " + std::to_string(ker.size()));
    rec.check(grp, "ker ad(u) matches the displayed span", same_span(Span(ker), Span(display)));
    const Subalgebra so21(std::vector<LieElement>{a, u, v}, "so21");
    const auto ker_so = ad_kernel(u, so21);
    rec.check(grp, "ker ad(u) in so(2,1) is span{u}", ker_so.size() == 1 && same_span(Span(ker_so), Span({u})));
    bool grows = true;
    for (const Mat& g : {Mat{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}, Mat{{1, 0, 1}, {0, 1, 0}, {1, 0, -2}},
                         Mat{{1, 0, 1}, {6, 1, 0}, {1, 0, -2}}}) {
      auto gens = lie::so21_basis();
      gens.emplace_back(g);
      grows = grows && bracket_closure(gens).dim() == 8;
    }
    rec.check(grp, "so(2,1) plus any sampled outside element generates sl(3)", grows);
  }

  // Subalgebras between so(2,1) ⋉ {0} and sl(3) ⋉ R³
  {
    const std::string grp = "intermediate_subalgebras";
    const Mat h{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
    const Mat k{{0, 0, 1}, {0, 0, -1}, {1, -1, 0}};
    const Mat g1{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}};
    const Mat g2{{1, 0, 1}, {0, 1, 0}, {1, 0, -2}};
    const Mat g{{1, 0, 1}, {6, 1, 0}, {1, 0, -2}};
    auto in_so21 = [&](const Mat& x) { return lie::preserves_gram(x, sigma); };
    rec.check(grp, "h, k in so(2,1)", in_so21(h) && in_so21(k));
    rec.check(grp, "g1, g2, g outside so(2,1)", !in_so21(g1) && !in_so21(g2) && !in_so21(g));
    rec.check(grp, "[h,g1], [h,g2], [k,g] in so(2,1)",
              in_so21(commutator(h, g1)) && in_so21(commutator(h, g2)) && in_so21(commutator(k, g)));
    const Mat expected{{0, 0, -3}, {0, 0, 0}, {3, 0, 0}};
    struct Sample {
      Scalar a1, b1, c1, a2, b2, c2, a3, b3, c3;
    };
    const Scalar r2 = Scalar::sqrt_of(2);
    const Sample samples[] = {{0, 0, 2, 0, 0, 5, 1, 1, 0},
                              {0, 0, Rational(-1, 2), 0, 0, 3, Rational(7, 3), Rational(7, 3), 0},
                              {0, 0, r2, 0, 0, Scalar(1) - r2, Scalar(-4), Scalar(-4), 0}};
    int idx = 0;
    for (const auto& s : samples) {
      ++idx;
      const LieElement eg(g, Vec{s.a3, s.b3, s.c3});
      const LieElement eg1(g1, Vec{s.a1, s.b1, s.c1});
      const LieElement eg2(g2, Vec{s.a2, s.b2, s.c2});
      const LieElement first = bracket(eg, eg1);
      const LieElement second = bracket(eg2, eg1);
      const bool ok1 = first.matrix() == expected && first.vector() == Vec{s.c1 - s.a3, -s.a3, Scalar(-2) * s.c1};
      const bool ok2 = second.matrix() == expected && second.vector() == Vec{s.c1, 0, Scalar(2) * (s.c2 - s.c1)};
      rec.check(grp, "[(g,v_g),(g1,v_g1)] sample " + std::to_string(idx), ok1, detail::str(first.vector()));
      rec.check(grp, "[(g2,v_g2),(g1,v_g1)] sample " + std::to_string(idx), ok2, detail::str(second.vector()));
    }
    // generic translations: hv and kv formulas
    const Vec va{Rational(2), Rational(-3), Rational(5)};
    rec.check(grp, "h v = (b, -a, 0)", h * va == Vec{va[1], -va[0], 0});
    rec.check(grp, "k v = (c, -c, a - b)", k * va == Vec{va[2], -va[2], va[0] - va[1]});
    // so(2,1) acts irreducibly: one translation generates all of R³
    auto gens = lie::so21_basis();
    gens.push_back(LieElement::translation(Vec{1, 0, 0}));
    rec.check(grp, "so(2,1) plus a translation generates so(2,1) x R^3", bracket_closure(gens).dim() == 6);
  }

  // Unimodular subalgebras containing H_0 and H_alpha
  {
    const auto ts = sweep_ts();
    const auto samples = sweep_alphas();
    const Subalgebra h0 = h_alpha_algebra(0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (const auto& e : table_containing_h0(ts[i], samples[i])) {
        const std::string label = catalog_name(e.id, e.has_param ? std::span<const Scalar>(&e.param, 1)
                                                                 : std::span<const Scalar>(),
                                               e.translation);
        rec.guarded("table_h0", label, [&] {
          const Subalgebra s = materialize(e);
          const bool uni = is_unimodular(s), cont = contains(s, h0);
          rec.check("table_h0", label, uni && cont,
                    std::string(uni ? "" : "not unimodular; ") + (cont ? "" : "misses H_0"));
        });
      }
      const Subalgebra ha = h_alpha_algebra(samples[i]);
      for (const auto& e : table_containing_h_alpha(samples[i], ts[i], samples[i])) {
        const std::string label = catalog_name(e.id, e.has_param ? std::span<const Scalar>(&e.param, 1)
                                                                 : std::span<const Scalar>(),
                                               e.translation) +
                                  " / alpha=" + samples[i].str();
        rec.guarded("table_h_alpha", label, [&] {
          const Subalgebra s = materialize(e);
          const bool uni = is_unimodular(s), cont = contains(s, ha);
          rec.check("table_h_alpha", label, uni && cont,
                    std::string(uni ? "" : "not unimodular; ") + (cont ? "" : "misses H_alpha"));
        });
      }
    }
  }

  // The displayed R_t against the actual conjugate v(t) so(Q0) v(t)^-1
  {
    const std::string grp = "conjugated_so_q0";
    for (const Scalar& t : sweep_ts()) {
      const Scalar p[1] = {t};
      const Span display(catalog_display("R_t", p));
      const Subalgebra conj = catalog("K_t", p);
      const bool closed = is_bracket_closed(display);
      const bool same = same_span(display, conj.span());
      std::string detail;
      if (!same) {
        detail = std::string("display ") + (closed ? "is" : "is not") +
                 " bracket-closed and differs from the conjugate algebra";
      }
      rec.check(grp, "R_t display equals conjugate at t=" + t.str(), same, detail);
    }
    rec.check(grp, "so(Q0) is R_0", same_span(Span(lie::so_q0_basis()), Span(catalog_display("R_t", std::vector{Scalar(0)}))));
  }

  // Stabilizer of the normal pair is the flow H_alpha
  {
    const std::string grp = "pair_stabilizer";
    for (const Scalar& alpha : sweep_alphas()) {
      const Subalgebra stab = stabilizer_algebra(tangent_normal_form(alpha), tangent_normal_linear());
      rec.check(grp, "stabilizer algebra of normal pair is H_alpha, alpha=" + alpha.str(),
                same_span(stab.span(), h_alpha_algebra(alpha).span()));
      bool flows = true;
      for (const Scalar& t : {Scalar(1), Scalar(Rational(-1, 2)), Scalar(3) * Scalar::sqrt_of(2)})
        flows = flows && preserves_pair(h_alpha(alpha, t), tangent_normal_form(alpha), tangent_normal_linear());
      rec.check(grp, "h_alpha(t) preserves the normal pair, alpha=" + alpha.str(), flows);
    }
    rec.guarded(grp, "worked example stabilizer is the conjugated flow", [&] {
      const NormalizationCertificate cert = normalize_pair(wp.q, wp.xi, wp.l);
      const Subalgebra stab = stabilizer_algebra(wf, wp.l);
      std::vector<LieElement> conj;
      for (const auto& x : h_alpha_algebra(cert.alpha).basis()) conj.push_back(adjoint(cert.map, x));
      bool flows = true;
      for (const Scalar& t : {Scalar(1), Scalar(-2), Scalar::sqrt_of(2)})
        flows = flows && preserves_pair(conjugated_flow(cert, t), wf, wp.l);
      rec.check(grp, "worked example stabilizer is the conjugated flow",
                flows && stab.dim() == 1 && same_span(stab.span(), Span(conj)));
    });
  }
  return rec.take();
}

}  // namespace iqf
