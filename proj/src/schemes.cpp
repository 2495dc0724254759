#include "llg/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "llg/error.hpp"
#include "llg/spectral.hpp"

namespace llg {

namespace {

struct SchemeInfo {
  SchemeId id;
  std::string_view name;
  Formulation kind;
  int depth;
};

constexpr std::array<SchemeInfo, 16> kSchemes = {{
    {SchemeId::Splitting, "splitting", Formulation::TypeI, 1},
    {SchemeId::Bdf1, "bdf1", Formulation::TypeI, 1},
    {SchemeId::Bdf2, "bdf2", Formulation::TypeI, 2},
    {SchemeId::Bdf3, "bdf3", Formulation::TypeI, 3},
    {SchemeId::Bdf1T2, "bdf1-t2", Formulation::TypeII, 1},
    {SchemeId::Bdf2T2, "bdf2-t2", Formulation::TypeII, 2},
    {SchemeId::Bdf3T2, "bdf3-t2", Formulation::TypeII, 3},
    {SchemeId::Cn, "cn", Formulation::TypeI, 2},
    {SchemeId::CnT2, "cn-t2", Formulation::TypeII, 2},
    {SchemeId::SemiImplicit, "semi-implicit", Formulation::TypeII, 2},
    {SchemeId::ProjectionE, "projection-e", Formulation::TypeII, 1},
    {SchemeId::GaussSeidel, "gauss-seidel", Formulation::TypeI, 2},
    {SchemeId::LlgBdf2, "llg-bdf2", Formulation::TypeII, 2},
    {SchemeId::Bdf1Energy, "bdf1-energy", Formulation::TypeI, 1},
    {SchemeId::CnEnergy, "cn-energy", Formulation::TypeI, 2},
    {SchemeId::GaussSeidelEnergy, "gauss-seidel-energy", Formulation::TypeI, 2},
}};

const SchemeInfo& info(SchemeId id) {
  for (const auto& s : kSchemes) {
    if (s.id == id) return s;
  }
  throw InvalidArgument("unknown scheme id");
}

VectorField helmholtz(const VectorField& f, double c) {
  return VectorField(helmholtz_solve(f[0], c), helmholtz_solve(f[1], c), helmholtz_solve(f[2], c));
}

// Explicit nonlinear products pass through here so the optional 2/3 rule
// applies to all of them.
VectorField filtered(VectorField v, const SchemeParams& p) {
  if (!p.dealias) return v;
  for (auto& comp : v.c) comp = truncate_two_thirds(comp);
  return v;
}

VectorField lambda_m(const Level& l) { return l.lambda * l.m; }
VectorField gradsq_m(const Level& l) { return l.grad_sq * l.m; }
VectorField m_cross_lap(const Level& l) { return cross(l.m, l.lap); }

template <class Getter>
VectorField combine(const std::vector<double>& w, const std::vector<Level>& h, Getter&& get) {
  VectorField out = w[0] * get(h[0]);
  for (std::size_t j = 1; j < w.size(); ++j) out.add_scaled(w[j], get(h[j]));
  return out;
}

void require_depth(const SchemeState& s, int needed) {
  if (s.depth() < needed) {
    throw HistoryError("scheme needs " + std::to_string(needed) + " stored levels, have " +
                       std::to_string(s.depth()));
  }
}

void require_uniform(const SchemeState& s, int levels) {
  for (int j = 1; j < levels; ++j) {
    const double h = s.history[j - 1].t - s.history[j].t;
    if (std::abs(h - s.dt) > 1e-9 * std::max(1.0, s.dt) + 1e-12 * std::abs(s.t())) {
      throw HistoryError("BDF history is not uniformly spaced at the current step size");
    }
  }
}

// Weights extrapolating (level 0, level 1) to t^n + dt/2. Falls back to the
// newest level alone when only one is stored.
std::vector<double> midpoint_weights(const SchemeState& s) {
  if (s.depth() < 2) return {1.0};
  const double h = s.history[0].t - s.history[1].t;
  const double r = 0.5 * s.dt / h;
  return {1.0 + r, -r};
}

double gamma_dissipation(const Level& l, double gamma) {
  const VectorField mxl = cross(l.m, l.lap);
  return gamma * integrate(dot(mxl, mxl));
}

StepOutcome finish(const SchemeState& state, Corrected c, std::uint32_t flags) {
  SchemeState next = advance(state, std::move(c.m), std::move(c.lambda), state.dt);
  const double d = gamma_dissipation(next.current(), next.params.gamma);
  RunRecord rec = make_record(next, state.dt, d, flags);
  next.energy = rec.energy;
  return {std::move(next), rec};
}

}  // namespace

SchemeId parse_scheme(std::string_view name) {
  for (const auto& s : kSchemes) {
    if (s.name == name) return s.id;
  }
  std::string msg = "unknown scheme '" + std::string(name) + "'; valid schemes:";
  for (const auto& s : kSchemes) msg += " " + std::string(s.name);
  throw InvalidArgument(msg);
}

std::string_view scheme_name(SchemeId id) { return info(id).name; }

std::span<const std::string_view> scheme_names() {
  static const std::array<std::string_view, kSchemes.size()> names = [] {
    std::array<std::string_view, kSchemes.size()> out{};
    for (std::size_t i = 0; i < kSchemes.size(); ++i) out[i] = kSchemes[i].name;
    return out;
  }();
  return names;
}

Formulation formulation_of(SchemeId id) { return info(id).kind; }

bool is_energy_scheme(SchemeId id) {
  return id == SchemeId::Bdf1Energy || id == SchemeId::CnEnergy || id == SchemeId::GaussSeidelEnergy;
}

bool is_length_preserving(SchemeId id) { return id != SchemeId::SemiImplicit; }

int history_depth(SchemeId id) { return info(id).depth; }

void SchemeParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  if (!(stab >= 0.0) || !std::isfinite(stab)) throw InvalidArgument("stabilization S must be >= 0");
}

Level make_level(double t, VectorField m, ScalarField lambda) {
  const Grid2D& g = m.grid();
  VectorField lap(g);
  ScalarField gsq(g);
  for (int d = 0; d < 3; ++d) {
    Derivatives der = derivatives(m[d]);
    for (std::size_t i = 0; i < gsq.size(); ++i) gsq[i] += der.dx[i] * der.dx[i] + der.dy[i] * der.dy[i];
    lap[d] = std::move(der.lap);
  }
  return Level{t, std::move(m), std::move(lambda), std::move(lap), std::move(gsq)};
}

SchemeState initial_state(VectorField m0, double t0, double dt, const SchemeParams& params,
                          Formulation kind) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const Grid2D grid = m0.grid();
  Level l = make_level(t0, std::move(m0), ScalarField(grid));
  if (kind == Formulation::TypeI) l.lambda = l.grad_sq;
  SchemeState s;
  s.dt = dt;
  s.params = params;
  s.energy = 0.5 * integrate(l.grad_sq);
  s.history.push_back(std::move(l));
  return s;
}

SchemeState initial_state_from_exact(const std::function<VectorField(double)>& exact, double t0,
                                     double dt, const SchemeParams& params, Formulation kind,
                                     int depth) {
  SchemeState s = initial_state(exact(t0), t0, dt, params, kind);
  for (int j = 1; j < std::clamp(depth, 1, 3); ++j) {
    const double tj = t0 - j * dt;
    VectorField m = exact(tj);
    const Grid2D grid = m.grid();
    Level l = make_level(tj, std::move(m), ScalarField(grid));
    if (kind == Formulation::TypeI) l.lambda = l.grad_sq;
    s.history.push_back(std::move(l));
  }
  return s;
}

SchemeState advance(const SchemeState& state, VectorField m, ScalarField lambda, double dt) {
  SchemeState next;
  next.dt = state.dt;
  next.params = state.params;
  next.energy = state.energy;
  next.history.reserve(3);
  next.history.push_back(make_level(state.t() + dt, std::move(m), std::move(lambda)));
  for (std::size_t j = 0; j < state.history.size() && next.history.size() < 3; ++j) {
    next.history.push_back(state.history[j]);
  }
  return next;
}

Corrected generic_corrector(double a, double b, const VectorField& r) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("corrector requires a > 0 and b > 0");
  const Grid2D& g = r.grid();
  Corrected out{VectorField(g), ScalarField(g)};
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double n = std::sqrt(r.c[0][i] * r.c[0][i] + r.c[1][i] * r.c[1][i] + r.c[2][i] * r.c[2][i]);
    if (!std::isfinite(n)) throw InstabilityError("non-finite corrector input", 0.0);
    if (n == 0.0) {
      const int ix = static_cast<int>(i % static_cast<std::size_t>(g.nx()));
      const int iy = static_cast<int>(i / static_cast<std::size_t>(g.nx()));
      throw DegenerateError("degenerate corrector: zero-length right side", ix, iy, g.x(ix), g.y(iy));
    }
    for (int d = 0; d < 3; ++d) out.m.c[d][i] = r.c[d][i] / n;
    out.lambda[i] = (a - n) / b;
  }
  return out;
}

RunRecord make_record(const SchemeState& advanced, double dt, double dissipation,
                      std::uint32_t flags) {
  const Level& l = advanced.current();
  RunRecord rec;
  rec.t = l.t;
  rec.energy = 0.5 * integrate(l.grad_sq);
  rec.dissipation = dissipation;
  const LengthRange len = length_deviation(l.m);
  rec.min_len = len.min;
  rec.max_len = len.max;
  rec.grad_inf = std::sqrt(l.grad_sq.max_abs());
  rec.dt = dt;
  if (!l.m.all_finite()) flags |= kFlagNan;
  rec.flags = flags;
  return rec;
}

VectorField predictor_bdf(const SchemeState& state, const BdfTable& table, Formulation kind,
                          const VectorField* forcing) {
  require_depth(state, 1);
  const int k = std::min(table.k, state.depth());
  const BdfTable& t = BdfTable::of(k);
  require_uniform(state, k);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const auto& h = state.history;

  VectorField rhs = combine(t.a_weights, h, [](const Level& l) { return l.m; });
  if (!t.b_weights.empty()) {
    rhs.add_scaled(dt * p.gamma, filtered(combine(t.b_weights, h, lambda_m), p));
  }
  if (kind == Formulation::TypeII) {
    rhs.add_scaled(dt * p.gamma, filtered(combine(t.bext_weights, h, gradsq_m), p));
  }
  if (p.beta != 0.0) {
    rhs.add_scaled(-dt * p.beta, filtered(combine(t.bext_weights, h, m_cross_lap), p));
  }
  if (forcing) rhs.add_scaled(dt, *forcing);
  rhs *= 1.0 / t.alpha;
  return helmholtz(rhs, p.gamma * dt / t.alpha);
}

Corrected corrector_bdf(const VectorField& mtilde, const SchemeState& state, const BdfTable& table) {
  const int k = std::min(table.k, state.depth());
  const BdfTable& t = BdfTable::of(k);
  const double b = state.params.gamma * state.dt;
  VectorField r = t.alpha * mtilde;
  if (!t.b_weights.empty()) {
    r.add_scaled(-b, filtered(combine(t.b_weights, state.history, lambda_m), state.params));
  }
  return generic_corrector(t.alpha, b, r);
}

StepOutcome splitting_step(const SchemeState& state) {
  if (state.params.beta != 0.0 || state.params.gamma != 1.0) {
    throw InvalidArgument("the splitting scheme is defined for beta = 0, gamma = 1");
  }
  return bdf_step(state, 1, Formulation::TypeI, {});
}

StepOutcome bdf_step(const SchemeState& state, int k, Formulation kind, const Forcing& forcing) {
  const BdfTable& table = BdfTable::of(k);
  std::optional<VectorField> g;
  if (forcing) g = forcing(state.t() + state.dt);
  const VectorField mtilde = predictor_bdf(state, table, kind, g ? &*g : nullptr);
  Corrected c = corrector_bdf(mtilde, state, table);
  return finish(state, std::move(c), state.depth() < k ? kFlagBootstrap : kFlagNone);
}

Corrected cn_predict_correct(const SchemeState& state, Formulation kind, const Forcing& forcing) {
  require_depth(state, 1);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const double half = 0.5 * p.gamma * dt;
  const Level& l0 = state.current();
  const std::vector<double> w = midpoint_weights(state);

  VectorField rhs = l0.m;
  rhs.add_scaled(half, l0.lap);
  rhs.add_scaled(dt * p.gamma, filtered(lambda_m(l0), p));
  if (kind == Formulation::TypeII) {
    rhs.add_scaled(dt * p.gamma, filtered(combine(w, state.history, gradsq_m), p));
  }
  if (p.beta != 0.0) rhs.add_scaled(-dt * p.beta, filtered(combine(w, state.history, m_cross_lap), p));
  if (forcing) rhs.add_scaled(dt, forcing(state.t() + 0.5 * dt));
  const VectorField mtilde = helmholtz(rhs, half);

  VectorField r = mtilde;
  r.add_scaled(-half, filtered(lambda_m(l0), p));
  return generic_corrector(1.0, half, r);
}

StepOutcome cn_step(const SchemeState& state, Formulation kind, const Forcing& forcing) {
  const bool needs_two = kind == Formulation::TypeII || state.params.beta != 0.0;
  Corrected c = cn_predict_correct(state, kind, forcing);
  return finish(state, std::move(c), needs_two && state.depth() < 2 ? kFlagBootstrap : kFlagNone);
}

StepOutcome semi_implicit_step(const SchemeState& state, const Forcing& forcing) {
  require_depth(state, 1);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const double half = 0.5 * p.gamma * dt;
  const Level& l0 = state.current();
  const std::vector<double> w = midpoint_weights(state);

  VectorField rhs = l0.m;
  rhs.add_scaled(half, l0.lap);
  rhs.add_scaled(dt * p.gamma, filtered(combine(w, state.history, gradsq_m), p));
  if (p.beta != 0.0) rhs.add_scaled(-dt * p.beta, filtered(combine(w, state.history, m_cross_lap), p));
  if (forcing) rhs.add_scaled(dt, forcing(state.t() + 0.5 * dt));
  VectorField m = helmholtz(rhs, half);

  const Grid2D grid = m.grid();
  SchemeState next = advance(state, std::move(m), ScalarField(grid), dt);
  const double d = gamma_dissipation(next.current(), p.gamma);
  RunRecord rec = make_record(next, dt, d, state.depth() < 2 ? kFlagBootstrap : kFlagNone);
  next.energy = rec.energy;
  return {std::move(next), rec};
}

VectorField projection_e_extra_term(const VectorField& m) {
  const Grid2D& g = m.grid();
  std::array<ScalarField, 3> dx{ScalarField(g), ScalarField(g), ScalarField(g)};
  std::array<ScalarField, 3> dy{ScalarField(g), ScalarField(g), ScalarField(g)};
  ScalarField gsq(g);
  for (int d = 0; d < 3; ++d) {
    auto [gx, gy] = gradient(m[d]);
    for (std::size_t i = 0; i < gsq.size(); ++i) gsq[i] += gx[i] * gx[i] + gy[i] * gy[i];
    dx[d] = std::move(gx);
    dy[d] = std::move(gy);
  }
  const auto [sx, sy] = gradient(gsq);
  VectorField out(g);
  for (int d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < gsq.size(); ++i) out[d][i] = sx[i] * dx[d][i] + sy[i] * dy[d][i];
  }
  return out;
}

StepOutcome projection_e_step(const SchemeState& state, const Forcing& forcing) {
  require_depth(state, 1);
  const SchemeParams& p = state.params;
  if (p.beta != 0.0 || p.gamma != 1.0) {
    throw InvalidArgument("projection-e is defined for beta = 0, gamma = 1");
  }
  const double dt = state.dt;
  const Level& l0 = state.current();
  VectorField rhs = l0.m;
  rhs.add_scaled(0.5 * dt, l0.lap);
  rhs.add_scaled(dt * dt, filtered(projection_e_extra_term(l0.m), p));
  if (forcing) rhs.add_scaled(dt, forcing(state.t() + 0.5 * dt));
  VectorField m = normalize_pointwise(helmholtz(rhs, 0.5 * dt));
  const Grid2D grid = m.grid();
  SchemeState next = advance(state, std::move(m), ScalarField(grid), dt);
  const double d = gamma_dissipation(next.current(), p.gamma);
  RunRecord rec = make_record(next, dt, d, kFlagNone);
  next.energy = rec.energy;
  return {std::move(next), rec};
}

VectorField gauss_seidel_predictor(const SchemeState& state, const Forcing& forcing) {
  require_depth(state, 1);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const double c = 0.5 * (p.stab + p.gamma) * dt;
  const Level& l0 = state.current();
  const Grid2D& g = l0.m.grid();
  const std::vector<double> w = midpoint_weights(state);

  // Extrapolant m^{n,dagger} at t^{n+1/2} and its Laplacian.
  const VectorField mx = combine(w, state.history, [](const Level& l) { return l.m; });
  const VectorField lx = combine(w, state.history, [](const Level& l) { return l.lap; });
  std::optional<VectorField> force;
  if (forcing) force = forcing(state.t() + 0.5 * dt);

  VectorField mtilde(g);
  VectorField half(g);      // (mtilde + m^n) / 2, filled component by component
  VectorField half_lap(g);  // its Laplacian
  for (int d = 0; d < 3; ++d) {
    ScalarField coupling(g);
    if (p.beta != 0.0) {
      if (d == 0) {
        coupling = mx[1] * lx[2] - mx[2] * lx[1];
      } else if (d == 1) {
        coupling = mx[2] * half_lap[0] - half[0] * lx[2];
      } else {
        coupling = half[0] * half_lap[1] - half[1] * half_lap[0];
      }
      if (p.dealias) coupling = truncate_two_thirds(coupling);
    }
    ScalarField lm = l0.lambda * l0.m[d];
    if (p.dealias) lm = truncate_two_thirds(lm);

    ScalarField rhs = l0.m[d];
    rhs.add_scaled(c, l0.lap[d]);
    if (p.stab != 0.0) rhs.add_scaled(-dt * p.stab, lx[d]);
    rhs.add_scaled(dt * p.gamma, lm);
    if (p.beta != 0.0) rhs.add_scaled(-dt * p.beta, coupling);
    if (force) rhs.add_scaled(dt, (*force)[d]);

    Spectrum s = forward(rhs);
    apply_helmholtz_inverse(g, s, c);
    Spectrum sl = s;
    apply_laplacian(g, sl);
    mtilde[d] = inverse(g, std::move(s));
    half[d] = 0.5 * (mtilde[d] + l0.m[d]);
    half_lap[d] = 0.5 * (inverse(g, std::move(sl)) + l0.lap[d]);
  }
  return mtilde;
}

Corrected gauss_seidel_predict_correct(const SchemeState& state, const Forcing& forcing) {
  const SchemeParams& p = state.params;
  const double half = 0.5 * p.gamma * state.dt;
  VectorField r = gauss_seidel_predictor(state, forcing);
  r.add_scaled(-half, filtered(lambda_m(state.current()), p));
  return generic_corrector(1.0, half, r);
}

StepOutcome gauss_seidel_step(const SchemeState& state, const Forcing& forcing) {
  Corrected c = gauss_seidel_predict_correct(state, forcing);
  return finish(state, std::move(c), state.depth() < 2 ? kFlagBootstrap : kFlagNone);
}

StepOutcome llg_bdf2_step(const SchemeState& state, const Forcing& forcing) {
  require_depth(state, 1);
  const int k = std::min(2, state.depth());
  const BdfTable& t = BdfTable::of(k);
  require_uniform(state, k);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const auto& h = state.history;

  // Nonlinear terms are evaluated at the extrapolant m^dagger = B_k(m).
  const VectorField mx = combine(t.bext_weights, h, [](const Level& l) { return l.m; });
  const Level lx = make_level(state.t(), mx, ScalarField(mx.grid()));

  VectorField rhs = combine(t.a_weights, h, [](const Level& l) { return l.m; });
  rhs.add_scaled(dt * p.gamma, filtered(gradsq_m(lx), p));
  if (!t.b_weights.empty()) rhs.add_scaled(dt * p.gamma, filtered(combine(t.b_weights, h, lambda_m), p));
  if (p.beta != 0.0) rhs.add_scaled(-dt * p.beta, filtered(m_cross_lap(lx), p));
  if (forcing) rhs.add_scaled(dt, forcing(state.t() + dt));
  rhs *= 1.0 / t.alpha;
  const VectorField mtilde = helmholtz(rhs, p.gamma * dt / t.alpha);
  Corrected c = corrector_bdf(mtilde, state, t);
  return finish(state, std::move(c), k < 2 ? kFlagBootstrap : kFlagNone);
}

Corrected bdf1_multiplier_predict_correct(const SchemeState& state, const Forcing& forcing) {
  require_depth(state, 1);
  const SchemeParams& p = state.params;
  const double dt = state.dt;
  const double b = p.gamma * dt;
  const Level& l0 = state.current();
  const VectorField lm = filtered(lambda_m(l0), p);

  VectorField rhs = l0.m;
  rhs.add_scaled(b, lm);
  if (p.beta != 0.0) rhs.add_scaled(-dt * p.beta, filtered(m_cross_lap(l0), p));
  if (forcing) rhs.add_scaled(dt, forcing(state.t() + dt));
  VectorField r = helmholtz(rhs, b);
  r.add_scaled(-b, lm);
  return generic_corrector(1.0, b, r);
}

}  // namespace llg
