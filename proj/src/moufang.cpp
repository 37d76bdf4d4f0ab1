#include "flipbench/moufang.hpp"

#include "flipbench/error.hpp"
#include "flipbench/fields.hpp"

#include <algorithm>

namespace flipbench {

FiniteGroupU FiniteGroupU::additive(const GaloisField& f) {
  FiniteGroupU u;
  u.n = f.order();
  u.add.resize(std::size_t(u.n) * u.n);
  u.neg.resize(u.n);
  for (std::uint32_t a = 0; a < u.n; ++a) {
    u.neg[a] = f.neg(a);
    for (std::uint32_t b = 0; b < u.n; ++b) u.add[std::size_t(a) * u.n + b] = f.add(a, b);
  }
  const GaloisField* fp = &f;
  u.name = [fp](std::uint32_t x) { return fp->format(fp->element(x)); };
  return u;
}

MoufangSet::MoufangSet(FiniteGroupU u, XPerm tau) : u_(std::move(u)), tau_(std::move(tau)) {
  if (u_.add.size() != std::size_t(u_.n) * u_.n || u_.neg.size() != u_.n)
    throw Error(ErrorCode::invalid_argument, "group tables have the wrong size");
  if (tau_.size() != points() || !is_permutation(tau_))
    throw Error(ErrorCode::invalid_argument, "tau is not a permutation of U u {inf}");
  if (tau_[0] != infinity() || tau_[infinity()] != 0)
    throw Error(ErrorCode::invalid_argument, "tau must swap 0 and inf");
  tau_inv_ = inverse(tau_);
}

std::uint32_t MoufangSet::plus(std::uint32_t a, std::uint32_t b) const {
  if (a == infinity() || b == infinity()) return infinity();
  return u_.plus(a, b);
}

std::uint32_t MoufangSet::minus(std::uint32_t a) const { return a == infinity() ? a : u_.neg[a]; }

void MoufangSet::require_nonzero(std::uint32_t a, const char* what) const {
  if (a == 0 || a >= u_.n) throw Error(ErrorCode::zero_argument, std::string(what) + " needs a in U*");
}

XPerm MoufangSet::alpha(std::uint32_t a) const {
  if (a >= u_.n) throw Error(ErrorCode::invalid_argument, "alpha needs a in U");
  XPerm p(points());
  for (std::uint32_t x = 0; x < u_.n; ++x) p[x] = u_.plus(x, a);
  p[infinity()] = infinity();
  return p;
}

XPerm MoufangSet::gamma(std::uint32_t a) const { return compose(compose(tau_inv_, alpha(a)), tau_); }

XPerm MoufangSet::hua(std::uint32_t a) const {
  require_nonzero(a, "hua");
  const std::uint32_t ati = tau_inv_[a];
  const std::uint32_t last = minus(tau_[minus(ati)]);
  XPerm p = compose(tau_, alpha(a));
  p = compose(p, tau_inv_);
  p = compose(p, alpha(minus(ati)));
  p = compose(p, tau_);
  return compose(p, alpha(last));
}

XPerm MoufangSet::mu(std::uint32_t a) const {
  require_nonzero(a, "mu");
  return compose(compose(gamma(tau_inv_[minus(a)]), alpha(a)), flipbench::inverse(gamma(tau_inv_[a])));
}

XPerm MoufangSet::opposite_hua(std::uint32_t a) const { return compose(tau_inv_, mu(a)); }

std::vector<XPerm> MoufangSet::root_group(std::uint32_t x) const {
  std::vector<XPerm> out;
  out.reserve(u_.n);
  if (x == infinity()) {
    for (std::uint32_t a = 0; a < u_.n; ++a) out.push_back(alpha(a));
  } else {
    const XPerm al = alpha(x), al_inv = flipbench::inverse(al);
    for (std::uint32_t a = 0; a < u_.n; ++a) out.push_back(compose(compose(al_inv, gamma(a)), al));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<XPerm> MoufangSet::little_projective_group(std::size_t cap) const {
  std::vector<XPerm> gens;
  for (std::uint32_t a = 1; a < u_.n; ++a) {
    gens.push_back(alpha(a));
    gens.push_back(gamma(a));
  }
  return closure(gens, points(), cap);
}

std::string MoufangSet::format(std::uint32_t x) const {
  if (x == infinity()) return "inf";
  return u_.name ? u_.name(x) : std::to_string(x);
}

MoufangSet moufang_of_field(const GaloisField& f) {
  const std::uint32_t q = f.order();
  XPerm tau(std::size_t(q) + 1);
  tau[0] = q;
  tau[q] = 0;
  for (std::uint32_t x = 1; x < q; ++x) tau[x] = f.neg(f.inv(x));
  return MoufangSet(FiniteGroupU::additive(f), std::move(tau));
}

std::shared_ptr<const GaloisField> parse_moufang_spec(std::string_view text) {
  if (text.size() < 4 || text.substr(0, 2) != "M(" || text.back() != ')')
    throw Error(ErrorCode::parse_error, "expected M(<finite field spec>), got '" + std::string(text) + "'");
  const FieldSpec spec = FieldSpec::parse(text.substr(2, text.size() - 3));
  if (!spec.is_finite()) throw Error(ErrorCode::infinite_field, "Moufang sets are built over finite fields only");
  return std::get<std::shared_ptr<const GaloisField>>(make_field(spec));
}

PointedMoufangSet::PointedMoufangSet(const MoufangSet& base, std::uint32_t e)
    : set_(base.group(), base.mu(base.minus(e))), e_(e) {}

XPerm PointedMoufangSet::hua(std::uint32_t a) const { return compose(set_.tau(), set_.mu(a)); }
XPerm PointedMoufangSet::opposite_hua(std::uint32_t a) const { return set_.opposite_hua(a); }
XPerm PointedMoufangSet::isotope_hua(std::uint32_t a, std::uint32_t b) const {
  return compose(inverse(hua(a)), hua(b));
}

XPerm extend_to_x(const Perm& phi) {
  XPerm p(phi);
  p.push_back(static_cast<std::uint32_t>(phi.size()));
  return p;
}

bool is_group_automorphism(const FiniteGroupU& u, const Perm& phi) {
  if (phi.size() != u.n || !is_permutation(phi)) return false;
  for (std::uint32_t a = 0; a < u.n; ++a)
    for (std::uint32_t b = 0; b < u.n; ++b)
      if (phi[u.plus(a, b)] != u.plus(phi[a], phi[b])) return false;
  return true;
}

Perm perm_of(const GaloisField& f, const AdditiveMap& phi) {
  Perm p(f.order());
  for (std::uint32_t x = 0; x < f.order(); ++x) p[x] = phi.apply(f, f.element(x)).index;
  return p;
}

bool is_flip_automorphism(const MoufangSet& m, const Perm& phi) {
  if (!is_group_automorphism(m.group(), phi))
    throw Error(ErrorCode::not_an_automorphism, "phi is not an automorphism of U");
  const XPerm beta = compose(extend_to_x(phi), m.tau());
  return is_identity(compose(beta, beta));
}

std::vector<std::uint32_t> identity_elements(const MoufangSet& m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 1; e < m.group().n; ++e)
    if (m.mu(m.minus(e)) == m.tau()) out.push_back(e);
  return out;
}

FlipExtension flip_extends_check(const MoufangSet& m, const Perm& phi) {
  if (!is_flip_automorphism(m, phi)) throw Error(ErrorCode::not_a_flip, "(phi tau)^2 is not the identity");
  FlipExtension r;
  const std::uint32_t n = m.group().n;
  const XPerm Phi = extend_to_x(phi);
  const Perm phi_inv = inverse(phi);
  const XPerm beta = compose(Phi, m.tau());
  const XPerm beta_inv = inverse(beta);
  const auto chi = [&](const XPerm& g) { return compose(compose(beta_inv, g), beta); };
  const auto note = [&](bool& flag, const std::string& what) {
    if (flag) r.counterexamples.push_back(what);
    flag = false;
  };

  r.beta_involutory = is_identity(compose(beta, beta));
  for (std::uint32_t a = 0; a < n; ++a) {
    const XPerm al = m.alpha(a), ga = m.gamma(a);
    const XPerm chi_al = chi(al), chi_ga = chi(ga);
    if (chi_al != m.gamma(phi[a])) note(r.alpha_to_gamma, "alpha_" + m.format(a));
    if (chi_ga != m.alpha(phi_inv[a])) note(r.gamma_to_alpha, "gamma_" + m.format(a));
    if (chi(chi_al) != al || chi(chi_ga) != ga) note(r.chi_involutory, "a=" + m.format(a));
  }
  for (std::uint32_t x = 0; x <= n; ++x) {
    std::vector<XPerm> img;
    for (const XPerm& g : m.root_group(x)) img.push_back(chi(g));
    std::sort(img.begin(), img.end());
    if (img != m.root_group(beta[x])) note(r.beta_in_aut, "U_" + m.format(x));
  }
  for (std::uint32_t a = 1; a < n; ++a)
    if (m.opposite_hua(phi[a]) != compose(compose(Phi, m.hua(a)), Phi)) note(r.main_identity, "a=" + m.format(a));

  const auto ids = identity_elements(m);
  if (!ids.empty()) {
    r.identity_element = ids.front();
    const PointedMoufangSet pm(m, ids.front());
    bool ok = true;
    const std::uint32_t ephi = phi[ids.front()];
    for (std::uint32_t a = 1; a < n; ++a)
      if (compose(pm.hua(a), Phi) != compose(Phi, pm.isotope_hua(ephi, phi[a]))) note(ok, "structure a=" + m.format(a));
    r.structure_identity = ok;
  }
  return r;
}

FlipClassificationM classify_flips_commutative(const GaloisField& f, std::size_t max_matrices) {
  const MoufangSet m = moufang_of_field(f);
  FlipClassificationM c;
  const auto maps = additive_automorphisms(f, max_matrices);
  c.candidates = maps.size();
  for (const auto& phi : maps)
    if (is_flip_automorphism(m, perm_of(f, phi))) c.observed.push_back(phi);
  c.predicted = predicted_additive_flips(f);
  std::vector<AdditiveMap> predicted_maps;
  for (const auto& pf : c.predicted) predicted_maps.push_back(pf.map);
  c.match = predicted_maps == c.observed;
  return c;
}

ObviousFlip obvious_flip_transitive(const MoufangSet& m, std::size_t cap) {
  if (!m.tau_involutory()) throw Error(ErrorCode::tau_not_involutory, "the obvious flip needs tau^2 = 1");
  ObviousFlip r;
  for (std::uint32_t x = 0; x < m.points(); ++x)
    if (m.tau()[x] == x) {
      r.fixed_point = x;
      break;
    }
  const auto group = m.little_projective_group(cap);
  r.group_order = group.size();
  std::vector<Perm> centralizer;
  for (const XPerm& g : group)
    if (compose(g, m.tau()) == compose(m.tau(), g)) centralizer.push_back(g);
  r.centralizer_order = centralizer.size();
  r.orbits = orbits(centralizer, m.points());
  r.transitive = r.orbits.size() == 1;
  return r;
}

AxiomReport verify_moufang_axioms(const MoufangSet& m) {
  AxiomReport r;
  const std::uint32_t np = static_cast<std::uint32_t>(m.points());
  std::vector<std::vector<XPerm>> roots(np);
  for (std::uint32_t x = 0; x < np; ++x) roots[x] = m.root_group(x);

  for (std::uint32_t x = 0; x < np; ++x) {
    const auto& ux = roots[x];
    for (const XPerm& g : ux)
      if (g[x] != x) r.fixes_point = false;
    // Sharply transitive on X \ {x}: for each y != x the orbit map is a bijection.
    for (std::uint32_t y = 0; y < np && r.regular; ++y) {
      if (y == x) continue;
      std::vector<bool> hit(np, false);
      for (const XPerm& g : ux) {
        if (g[y] == x || hit[g[y]]) {
          r.regular = false;
          break;
        }
        hit[g[y]] = true;
      }
    }
    for (const XPerm& g : ux) {
      const XPerm g_inv = inverse(g);
      for (std::uint32_t y = 0; y < np; ++y) {
        std::vector<XPerm> conj;
        conj.reserve(roots[y].size());
        for (const XPerm& h : roots[y]) conj.push_back(compose(compose(g_inv, h), g));
        std::sort(conj.begin(), conj.end());
        if (conj != roots[g[y]]) r.permutes_root_groups = false;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Recorder {
  IdentityCheck c;
  explicit Recorder(std::string name) { c.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++c.cases;
    if (!ok && c.passed) {
      c.passed = false;
      c.counterexample = what();
    }
  }
};

}  // namespace

IdentitySuite verify_identities(const GaloisField& f, const SuiteOptions& opts) {
  IdentitySuite suite;
  suite.field = f.spec_string();
  const MoufangSet m = moufang_of_field(f);
  const std::uint32_t q = f.order();
  const std::uint32_t inf = m.infinity();
  const auto el = [&](std::uint32_t i) { return f.element(i); };
  const auto fmt = [&](std::uint32_t x) { return m.format(x); };

  {
    Recorder r("moufang_axioms");
    const AxiomReport ax = verify_moufang_axioms(m);
    r.expect(ax.fixes_point, [] { return std::string("a root group moves its point"); });
    r.expect(ax.regular, [] { return std::string("a root group is not regular"); });
    r.expect(ax.permutes_root_groups, [] { return std::string("conjugation does not permute root groups"); });
    suite.checks.push_back(r.c);
  }

  std::vector<XPerm> hua(q), mu(q);
  for (std::uint32_t a = 1; a < q; ++a) {
    hua[a] = m.hua(a);
    mu[a] = m.mu(a);
  }

  {
    Recorder r("gamma_fixes_zero");
    for (std::uint32_t a = 0; a < q; ++a)
      r.expect(m.gamma(a)[0] == 0, [&] { return "a=" + fmt(a); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("hua_fixes_zero_and_inf");
    for (std::uint32_t a = 1; a < q; ++a)
      r.expect(hua[a][0] == 0 && hua[a][inf] == inf, [&] { return "a=" + fmt(a); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("hua_additive");
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          r.expect(hua[a][f.add(b, c)] == f.add(hua[a][b], hua[a][c]),
                   [&] { return "a=" + fmt(a) + ",b=" + fmt(b) + ",c=" + fmt(c); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("hua_is_aba");
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        r.expect(hua[a][b] == (el(a) * el(b) * el(a)).index, [&] { return "a=" + fmt(a) + ",b=" + fmt(b); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("mu_swaps_zero_and_inf");
    for (std::uint32_t a = 1; a < q; ++a)
      r.expect(mu[a][0] == inf && mu[a][inf] == 0, [&] { return "a=" + fmt(a); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("mu_inverse_is_mu_of_negative");
    for (std::uint32_t a = 1; a < q; ++a)
      r.expect(inverse(mu[a]) == mu[f.neg(a)], [&] { return "a=" + fmt(a); });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("mu_is_tau_inverse_hua");
    for (std::uint32_t a = 1; a < q; ++a)
      r.expect(mu[a] == compose(m.tau_inverse(), hua[a]), [&] { return "a=" + fmt(a); });
    suite.checks.push_back(r.c);
  }
  {
    // Every element of U_0* alpha_a U_0* swapping 0 and inf equals mu_a, and one exists.
    Recorder r("mu_unique_in_double_coset");
    std::vector<XPerm> u0;
    for (std::uint32_t b = 1; b < q; ++b) u0.push_back(m.gamma(b));
    for (std::uint32_t a = 1; a < q; ++a) {
      const XPerm al = m.alpha(a);
      std::size_t found = 0;
      bool unique = true;
      for (const XPerm& g1 : u0) {
        const XPerm left = compose(g1, al);
        for (const XPerm& g2 : u0) {
          const XPerm w = compose(left, g2);
          if (w[0] == inf && w[inf] == 0) {
            ++found;
            if (w != mu[a]) unique = false;
          }
        }
      }
      r.expect(found > 0 && unique, [&] { return "a=" + fmt(a); });
    }
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("pointed_hua_at_e_is_identity");
    const PointedMoufangSet pm(m, 1);
    r.expect(pm.tau() == m.tau(), [] { return std::string("mu_{-1} differs from tau"); });
    r.expect(is_identity(pm.hua(1)), [] { return std::string("h_1"); });
    r.expect(is_identity(pm.opposite_hua(1)), [] { return std::string("g_1"); });
    suite.checks.push_back(r.c);
  }
  {
    // h_b^{(a)} = mu_{-a} mu_b = h_a^{-1} h_b, acting on U as b' -> a^{-2} b^2 b'.
    Recorder r("isotope_hua");
    const PointedMoufangSet pm(m, 1);
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b) {
        const XPerm iso = pm.isotope_hua(a, b);
        bool ok = iso == compose(mu[f.neg(a)], mu[b]);
        const GFElem k = el(b) * el(b) / (el(a) * el(a));
        for (std::uint32_t x = 0; x < q; ++x) ok = ok && iso[x] == (k * el(x)).index;
        r.expect(ok, [&] { return "a=" + fmt(a) + ",b=" + fmt(b); });
      }
    suite.checks.push_back(r.c);
  }
  if (q <= opts.hua_subgroup_max_q) {
    Recorder r("hua_subgroup_is_stabilizer");
    std::vector<Perm> gens(hua.begin() + 1, hua.end());
    auto h = closure(gens, m.points());
    std::vector<XPerm> stab;
    for (const XPerm& g : m.little_projective_group())
      if (g[0] == 0 && g[inf] == inf) stab.push_back(g);
    std::sort(h.begin(), h.end());
    std::sort(stab.begin(), stab.end());
    r.expect(h == stab, [&] {
      return "|H| = " + std::to_string(h.size()) + ", |G_{0,inf}| = " + std::to_string(stab.size());
    });
    suite.checks.push_back(r.c);
  }

  const auto maps = additive_automorphisms(f);
  std::vector<AdditiveMap> flips;
  for (const auto& phi : maps)
    if (is_flip_automorphism(m, perm_of(f, phi))) flips.push_back(phi);
  std::sort(flips.begin(), flips.end());

  if (q <= opts.phitau_max_q) {
    // theta_phi sends alpha_a to gamma_{a phi}; in PSL_2 terms U+(a) -> U-(-a phi),
    // so the matrix-side map is -phi.
    Recorder r("phitau_both_directions");
    Classification sl = classify_additive_flips(f);
    std::sort(sl.observed.begin(), sl.observed.end());
    for (const auto& phi : maps) {
      const AdditiveMap neg_phi = additive_map_of(f, [&](GFElem x) { return -phi.apply(f, x); });
      const bool extends = std::binary_search(sl.observed.begin(), sl.observed.end(), neg_phi);
      const bool flip = std::binary_search(flips.begin(), flips.end(), phi);
      r.expect(extends == flip, [&] { return "phi=" + phi.to_string(); });
    }
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("flip_classification");
    std::vector<AdditiveMap> predicted;
    for (const auto& pf : predicted_additive_flips(f)) predicted.push_back(pf.map);
    std::sort(predicted.begin(), predicted.end());
    r.expect(predicted == flips, [&] {
      return std::to_string(flips.size()) + " flips observed, " + std::to_string(predicted.size()) + " predicted";
    });
    suite.checks.push_back(r.c);
  }
  {
    Recorder r("main_identity_and_structure_group");
    for (const auto& phi : flips) {
      const FlipExtension ext = flip_extends_check(m, perm_of(f, phi));
      r.expect(ext.ok() && ext.structure_identity.has_value(), [&] {
        return "phi=" + phi.to_string() + (ext.counterexamples.empty() ? "" : ": " + ext.counterexamples.front());
      });
    }
    suite.checks.push_back(r.c);
  }
  {
    // A transitive obvious flip forces tau to be fixed-point free.
    Recorder r("obvious_flip_fixed_point_lemma");
    const ObviousFlip of = obvious_flip_transitive(m);
    r.expect(!(of.transitive && of.fixed_point), [&] { return "fixed point " + fmt(*of.fixed_point); });
    suite.checks.push_back(r.c);
  }
  return suite;
}

}  // namespace flipbench
