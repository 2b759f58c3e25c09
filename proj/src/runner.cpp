#include "sdlab/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

namespace sdlab {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int sweep_worker_cap() {
  if (const char* s = std::getenv("SDLAB_SWEEP_WORKERS")) {
    const int v = std::atoi(s);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(std::min(hc, 8u));
}

}  // namespace

BoundaryLayout boundary_layout(BoundaryPreset preset) {
  return preset == BoundaryPreset::example21 ? BoundaryLayout::top_dirichlet()
                                             : BoundaryLayout::side_dirichlet();
}

StaggeredMesh RunConfig::make_mesh() const {
  const int nys = ny_s > 0 ? ny_s : nx;
  const int nyd = ny_d > 0 ? ny_d : nx;
  return build_mesh(nx, nys, nyd, boundary_layout(boundary));
}

PreparedSystem prepare(const RunConfig& cfg) {
  const StaggeredMesh mesh = cfg.make_mesh();
  const ProblemData data = make_mms_data(cfg.params, mesh.layout);
  PreparedSystem ps;
  ps.sys = assemble_system(mesh, cfg.params, cfg.formulation, cfg.beta_n, data);
  const InterfaceVariant v =
      cfg.fractional_variant ? *cfg.fractional_variant : variant_for_layout(mesh.layout);
  ps.precond = build_preconditioner(ps.sys, cfg.precond, v);
  return ps;
}

RunResult run_solve(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  PreparedSystem ps = prepare(cfg);
  Vec x = seeded_initial_guess(ps.sys, cfg.seed);
  const SparseMatrix& A = ps.sys.A;
  SolveReport rep = minres([&A](const Vec& v) { return Vec(A * v); }, ps.precond.as_linop(),
                           ps.sys.rhs, x, cfg.reduction, cfg.max_iter);
  RunResult r;
  r.cfg = cfg;
  r.iterations = rep.iterations;
  r.converged = rep.converged;
  r.residual_history = std::move(rep.residual_history);
  const MmsData mms{cfg.params};
  r.err = error_norms(ps.sys, x, mms);
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<RunResult> run_sweep(const SweepConfig& cfg) {
  const std::vector<SweepCase> cases = sweep_grid(cfg.S, cfg.Da, cfg.alpha, cfg.nx);
  std::vector<RunResult> out(cases.size());
  const int nw = int(std::min<std::size_t>(std::size_t(sweep_worker_cap()), cases.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(std::size_t(std::max(nw, 1)));
  auto work = [&](int w) {
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cases.size()) break;
        RunConfig rc = cfg.base;
        rc.params = cases[i].params;
        rc.nx = cases[i].nx;
        rc.ny_s = 0;
        rc.ny_d = 0;
        out[i] = run_solve(rc);
      }
    } catch (...) {
      errs[std::size_t(w)] = std::current_exception();
    }
  };
  if (nw <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nw));
    for (int w = 0; w < nw; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<ConvergenceRow> run_convergence(const RunConfig& cfg, const std::vector<int>& nxs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ConvergenceRow> rows;
  for (const int nx : nxs) {
    RunConfig rc = cfg;
    rc.nx = nx;
    rc.ny_s = 0;
    rc.ny_d = 0;
    const StaggeredMesh mesh = rc.make_mesh();
    const ProblemData data = make_mms_data(rc.params, mesh.layout);
    const AssembledSystem sys =
        assemble_system(mesh, rc.params, rc.formulation, rc.beta_n, data);
    const Factorization full(sys.A, FactorKind::symmetric_indefinite);
    const Vec x = full.solve(sys.rhs);
    const MmsData mms{rc.params};

    ConvergenceRow row{};
    row.nx = nx;
    row.h = mesh.hx;
    row.err = error_norms(sys, x, mms);
    if (rows.empty()) {
      row.order_ux = row.order_uy = row.order_ps = row.order_pd = row.order_pgamma = nan;
    } else {
      const ConvergenceRow& p = rows.back();
      const double lh = std::log(p.h / row.h);
      row.order_ux = std::log(p.err.ux / row.err.ux) / lh;
      row.order_uy = std::log(p.err.uy / row.err.uy) / lh;
      row.order_ps = std::log(p.err.ps / row.err.ps) / lh;
      row.order_pd = std::log(p.err.pd / row.err.pd) / lh;
      row.order_pgamma =
          row.err.has_pgamma ? std::log(p.err.pgamma / row.err.pgamma) / lh : nan;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double run_condition(const RunConfig& cfg) {
  PreparedSystem ps = prepare(cfg);
  return condition_number(ps.sys.A, ps.precond.dense_norm());
}

std::string csv_header_solve() {
  return "formulation,precond,mu,k,alpha,nx,iterations,converged,err_pD,err_pS,err_ux,"
         "err_uy,err_pGamma,wall_time_s";
}

std::string csv_row(const RunResult& r) {
  std::string s;
  s += r.cfg.formulation == Formulation::la ? "la" : "ro";
  s += ',';
  s += r.cfg.precond == PrecondKind::exact ? "exact" : "naive";
  s += ',';
  s += fmt_g(r.cfg.params.mu) + ',' + fmt_g(r.cfg.params.k) + ',' + fmt_g(r.cfg.params.alpha);
  s += ',' + std::to_string(r.cfg.nx);
  s += ',' + std::to_string(r.iterations);
  s += ',';
  s += r.converged ? "true" : "false";
  s += ',' + fmt_g(r.err.pd) + ',' + fmt_g(r.err.ps) + ',' + fmt_g(r.err.ux) + ',' +
       fmt_g(r.err.uy) + ',';
  if (r.err.has_pgamma) s += fmt_g(r.err.pgamma);
  s += ',' + fmt_f6(r.wall_time_s);
  return s;
}

void write_csv(std::ostream& os, const std::vector<RunResult>& rows) {
  os << csv_header_solve() << '\n';
  for (const RunResult& r : rows) os << csv_row(r) << '\n';
}

std::string csv_header_convergence() {
  return "nx,h,err_ux,err_uy,err_pS,err_pD,err_pGamma,order_ux,order_uy,order_pS,order_pD,"
         "order_pGamma";
}

void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << csv_header_convergence() << '\n';
  auto opt = [](double v) { return std::isnan(v) ? std::string() : fmt_g(v); };
  for (const ConvergenceRow& r : rows) {
    os << r.nx << ',' << fmt_g(r.h) << ',' << fmt_g(r.err.ux) << ',' << fmt_g(r.err.uy) << ','
       << fmt_g(r.err.ps) << ',' << fmt_g(r.err.pd) << ','
       << (r.err.has_pgamma ? fmt_g(r.err.pgamma) : std::string()) << ',' << opt(r.order_ux)
       << ',' << opt(r.order_uy) << ',' << opt(r.order_ps) << ',' << opt(r.order_pd) << ','
       << (r.err.has_pgamma ? opt(r.order_pgamma) : std::string()) << '\n';
  }
}

void dump_matrix_market(const RunConfig& cfg, const std::string& dir) {
  const StaggeredMesh mesh = cfg.make_mesh();
  const ProblemData data = make_mms_data(cfg.params, mesh.layout);
  const AssembledSystem sys =
      assemble_system(mesh, cfg.params, cfg.formulation, cfg.beta_n, data);
  std::filesystem::create_directories(dir);
  std::ofstream fa(dir + "/A.mtx");
  write_matrix_market(fa, sys.A);
  std::ofstream fb(dir + "/b.mtx");
  write_matrix_market(fb, sys.rhs);
  if (!fa || !fb) throw std::runtime_error("dump_matrix_market: cannot write to " + dir);
}

}  // namespace sdlab
