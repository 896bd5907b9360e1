#include "nlsbg/evolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

namespace nlsbg {

namespace {

using cplx = std::complex<double>;

// FFTW execution is thread-safe, planning is not
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct Fft {
  int n;
  fftw_plan fwd, bwd;
  std::vector<cplx> buf;

  explicit Fft(int n_) : n(n_), buf(n_) {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::vector<cplx>& v) {
    buf = v;
    fftw_execute(fwd);
    v = buf;
  }
  void backward(std::vector<cplx>& v) {  // normalized inverse
    buf = v;
    fftw_execute(bwd);
    double s = 1.0 / n;
    for (int i = 0; i < n; ++i) v[i] = buf[i] * s;
  }
};

// phi-coefficients of ETDRK4 by the Kassam-Trefethen contour mean over a unit
// circle around each z = dt * L_k (stable for z near 0)
struct EtdCoeffs {
  std::vector<cplx> E, E2, Q, f1, f2, f3;
};

EtdCoeffs etd_coeffs(const std::vector<cplx>& lin, double h) {
  const int M = 64;
  size_t n = lin.size();
  EtdCoeffs c;
  c.E.resize(n);
  c.E2.resize(n);
  c.Q.assign(n, 0.0);
  c.f1.assign(n, 0.0);
  c.f2.assign(n, 0.0);
  c.f3.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    cplx z = h * lin[i];
    c.E[i] = std::exp(z);
    c.E2[i] = std::exp(0.5 * z);
    for (int m = 0; m < M; ++m) {
      cplx r = z + std::exp(cplx(0.0, 2.0 * M_PI * (m + 0.5) / M));
      cplx er = std::exp(r), r2 = r * r, r3 = r2 * r;
      c.Q[i] += (std::exp(0.5 * r) - 1.0) / r;
      c.f1[i] += (-4.0 - r + er * (4.0 - 3.0 * r + r2)) / r3;
      c.f2[i] += (2.0 + r + er * (-2.0 + r)) / r3;
      c.f3[i] += (-4.0 - 3.0 * r - r2 + er * (4.0 - r)) / r3;
    }
    double s = h / M;
    c.Q[i] *= s;
    c.f1[i] *= s;
    c.f2[i] *= s;
    c.f3[i] *= s;
  }
  return c;
}

struct Workspace {
  int N;
  double L;
  Fft fft;
  std::vector<double> bg;        // tanh on the grid
  std::vector<cplx> lin;         // -i k^2
  std::vector<double> dealias;   // 2/3-rule mask
  EtdCoeffs co;

  Workspace(int N_, double L_, double h) : N(N_), L(L_), fft(N_) {
    bg.resize(N);
    lin.resize(N);
    dealias.resize(N);
    for (int j = 0; j < N; ++j) bg[j] = std::tanh(-L + 2.0 * L / N * j);
    for (int j = 0; j < N; ++j) {
      int m = (j <= N / 2) ? j : j - N;
      double k = M_PI * m / L;
      lin[j] = cplx(0.0, -k * k);
      dealias[j] = (std::abs(m) <= N / 3) ? 1.0 : 0.0;
    }
    co = etd_coeffs(lin, h);
  }

  // dealiased transform of the nonlinear term, from physical w samples
  std::vector<cplx> nonlinear_hat(const std::vector<cplx>& w) {
    std::vector<cplx> nl(N);
    const cplx two_i{0.0, 2.0};
    for (int j = 0; j < N; ++j) {
      cplx q = bg[j] + w[j];
      double t2 = bg[j] * bg[j];
      nl[j] = -two_i * ((std::norm(q) - 1.0) * q - (t2 - 1.0) * bg[j]);
    }
    fft.forward(nl);
    for (int j = 0; j < N; ++j) nl[j] *= dealias[j];
    return nl;
  }

  std::vector<cplx> to_physical(const std::vector<cplx>& what) {
    std::vector<cplx> w = what;
    fft.backward(w);
    return w;
  }
};

double leakage_of(const std::vector<cplx>& w) {
  size_t n = w.size(), edge = n / 20;
  double m = 0.0;
  for (size_t j = 0; j < edge; ++j) {
    m = std::max(m, std::abs(w[j]));
    m = std::max(m, std::abs(w[n - 1 - j]));
  }
  return m;
}

DiagnosticsRow diagnostics_of(const EvolutionState& st) {
  DiagnosticsRow row;
  row.t = st.t;
  row.leakage = leakage_of(st.w);
  auto [mass, energy] = conserved_quantities(st);
  row.mass = mass;
  row.energy = energy;
  return row;
}

}  // namespace

EvolutionState evolve(const InitialDatum& datum, double t_end,
                      const EvolveParams& params) {
  if (params.N < 16 || params.L <= 0.0 || params.dt <= 0.0)
    throw std::invalid_argument("evolve: bad discretization parameters");
  if (t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");
  Workspace ws(params.N, params.L, params.dt);

  EvolutionState st;
  st.L = params.L;
  st.N = params.N;
  st.t = 0.0;
  st.w.resize(params.N);
  for (int j = 0; j < params.N; ++j)
    st.w[j] = datum.at(st.x_at(j)) - ws.bg[j];
  if (leakage_of(st.w) > params.leakage_threshold)
    throw std::runtime_error(
        "evolve: initial boundary leakage above threshold; enlarge the domain");
  st.diagnostics.push_back(diagnostics_of(st));

  std::vector<cplx> v = st.w;
  ws.fft.forward(v);
  for (int j = 0; j < params.N; ++j) v[j] *= ws.dealias[j];

  long steps = std::lround(t_end / params.dt);
  double h = (steps > 0) ? t_end / steps : params.dt;
  if (std::abs(h - params.dt) > 1e-12 * params.dt) ws.co = etd_coeffs(ws.lin, h);

  long next_record = std::lround(params.record_interval / h);
  if (next_record < 1) next_record = 1;

  std::vector<cplx> a(params.N), b(params.N), c(params.N);
  for (long step = 0; step < steps; ++step) {
    std::vector<cplx> w_phys = ws.to_physical(v);
    std::vector<cplx> Nv = ws.nonlinear_hat(w_phys);
    for (int j = 0; j < params.N; ++j)
      a[j] = ws.co.E2[j] * v[j] + ws.co.Q[j] * Nv[j];
    std::vector<cplx> Na = ws.nonlinear_hat(ws.to_physical(a));
    for (int j = 0; j < params.N; ++j)
      b[j] = ws.co.E2[j] * v[j] + ws.co.Q[j] * Na[j];
    std::vector<cplx> Nb = ws.nonlinear_hat(ws.to_physical(b));
    for (int j = 0; j < params.N; ++j)
      c[j] = ws.co.E2[j] * a[j] + ws.co.Q[j] * (2.0 * Nb[j] - Nv[j]);
    std::vector<cplx> Nc = ws.nonlinear_hat(ws.to_physical(c));
    for (int j = 0; j < params.N; ++j)
      v[j] = ws.co.E[j] * v[j] + ws.co.f1[j] * Nv[j] +
             2.0 * ws.co.f2[j] * (Na[j] + Nb[j]) + ws.co.f3[j] * Nc[j];

    if ((step + 1) % next_record == 0 || step + 1 == steps) {
      st.w = ws.to_physical(v);
      st.t = h * (step + 1);
      DiagnosticsRow row = diagnostics_of(st);
      if (!std::isfinite(row.mass) || !std::isfinite(row.leakage))
        throw std::runtime_error("evolve: numerical blow-up (non-finite field)");
      if (row.leakage > params.leakage_threshold)
        throw std::runtime_error(
            "evolve: boundary leakage breached threshold; enlarge the domain");
      st.diagnostics.push_back(row);
    }
  }
  st.w = ws.to_physical(v);
  st.t = t_end;
  return st;
}

cplx sample_field(const EvolutionState& state, double x) {
  double margin = 0.05 * state.L;
  if (x < -state.L + margin || x > state.L - margin)
    throw std::domain_error("evolve: sample point outside the trusted interior");
  // exact value at a grid node, otherwise a direct band-limited Fourier sum
  double pos = (x + state.L) / state.dx();
  double frac = pos - std::round(pos);
  if (std::abs(frac) < 1e-12)
    return std::tanh(x) + state.w[(static_cast<long>(std::lround(pos)) %
                                   state.N + state.N) % state.N];
  int N = state.N;
  std::vector<cplx> what = state.w;
  // local FFT (sampling is rare; clarity over caching)
  Fft fft(N);
  fft.forward(what);
  cplx acc = 0.0;
  for (int j = 0; j < N; ++j) {
    int m = (j <= N / 2) ? j : j - N;
    if (m == N / 2) {  // split the Nyquist mode symmetrically
      acc += what[j] * std::cos(M_PI * N / 2.0 / state.L * (x + state.L));
      continue;
    }
    double k = M_PI * m / state.L;
    acc += what[j] * std::exp(cplx(0.0, k * (x + state.L)));
  }
  return std::tanh(x) + acc / static_cast<double>(N);
}

std::pair<double, double> conserved_quantities(const EvolutionState& state) {
  int N = state.N;
  double dx = state.dx();
  // q_x = sech^2 + w_x with w_x spectral
  std::vector<cplx> wx = state.w;
  Fft fft(N);
  fft.forward(wx);
  for (int j = 0; j < N; ++j) {
    int m = (j <= N / 2) ? j : j - N;
    if (m == N / 2) m = 0;  // derivative of the Nyquist mode is dropped
    wx[j] *= cplx(0.0, M_PI * m / state.L);
  }
  fft.backward(wx);

  double mass = 0.0, energy = 0.0;
  for (int j = 0; j < N; ++j) {
    double x = state.x_at(j);
    double th = std::tanh(x), sech2 = 1.0 - th * th;
    cplx q = th + state.w[j];
    double dens = std::norm(q) - 1.0;
    cplx qx = sech2 + wx[j];
    mass += dens;
    energy += std::norm(qx) + dens * dens;
  }
  return {mass * dx, energy * dx};
}

std::string field_to_csv(const EvolutionState& state) {
  std::string out = "x,re_q,im_q\n";
  char line[128];
  for (int j = 0; j < state.N; ++j) {
    double x = state.x_at(j);
    cplx q = std::tanh(x) + state.w[j];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x, q.real(), q.imag());
    out += line;
  }
  return out;
}

std::string diagnostics_to_csv(const EvolutionState& state) {
  std::string out = "t,mass,energy,leakage\n";
  char line[160];
  for (const auto& r : state.diagnostics) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass,
                  r.energy, r.leakage);
    out += line;
  }
  return out;
}

}  // namespace nlsbg
