#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "json.hpp"
#include "ncqm/algebra.hpp"
#include "ncqm/eigensolver.hpp"
#include "ncqm/error.hpp"
#include "ncqm/kernels.hpp"
#include "ncqm/modspace.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/state_io.hpp"
#include "ncqm/states.hpp"
#include "ncqm/uncertainty.hpp"
#include "ncqm/wdw.hpp"

#ifndef NCQM_VERSION
#define NCQM_VERSION "dev"
#endif

namespace ncqm::cli {

namespace {

using json = nlohmann::json;

struct Common {
  double theta = 0.0, eta = 0.0, epsilon = 0.0, split = 1.0;
  int n1 = 128, n2 = 128;
  double L1 = 12.0, L2 = 12.0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string csv;
  // state source: file, or a Gaussian
  std::string state;
  double ga = 1.0, gb = 1.0, gx1 = 0.0, gx2 = 0.0;
};

// Thrown by handlers when a checked invariant fails; the report is still written.
struct InvariantViolated {
  json report;
};

AlgebraParams params_of(const Common& c) { return derive_constants(c.theta, c.eta, c.epsilon, c.split); }

GridSpec grid_of(const Common& c) {
  GridSpec g{c.n1, c.n2, c.L1, c.L2};
  validate(g);
  return g;
}

WaveFunction state_of(const Common& c) {
  if (!c.state.empty()) return read_state(c.state);
  return gaussian(grid_of(c), {c.ga, c.gb, c.gx1, c.gx2});
}

json config_of(const Common& c, const std::string& command, const json& extra) {
  json j = {{"command", command},
            {"params", {{"theta", c.theta}, {"eta", c.eta}, {"epsilon", c.epsilon}, {"split", c.split}}},
            {"grid", {{"n1", c.n1}, {"n2", c.n2}, {"L1", c.L1}, {"L2", c.L2}}},
            {"seed", c.seed},
            {"threads", c.threads}};
  if (!c.state.empty())
    j["state"] = {{"file", c.state}};
  else
    j["state"] = {{"gaussian", {{"a", c.ga}, {"b", c.gb}, {"x1_0", c.gx1}, {"x2_0", c.gx2}}}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

json params_json(const AlgebraParams& p) {
  return {{"theta", p.theta}, {"eta", p.eta}, {"epsilon", p.epsilon}, {"split", p.split}, {"xi", p.xi},
          {"lambda", p.lambda}, {"mu", p.mu}, {"E", p.E}, {"F", p.F}};
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw DomainError("cli", "range must look like lo:hi, got '" + s + "'");
  return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

void emit(const Common& c, const json& report) {
  const std::string text = report.dump(2);
  if (c.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(c.out);
    if (!f) throw DomainError("cli", "cannot write " + c.out);
    f << text << "\n";
  }
}

struct Command {
  std::string name;
  std::function<json()> extra;  // subcommand options for the config block
  std::function<json()> body;   // result block
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Deformed phase-space uncertainty experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NCQM_VERSION);
  Common c;

  auto add_common = [&](CLI::App* s, bool with_grid, bool with_state) {
    s->add_option("--theta", c.theta, "position deformation")->capture_default_str();
    s->add_option("--eta", c.eta, "momentum deformation")->capture_default_str();
    s->add_option("--epsilon", c.epsilon, "non-canonical strength")->capture_default_str();
    s->add_option("--split", c.split, "lambda^2 / mu^2 split")->capture_default_str();
    s->add_option("--seed", c.seed)->capture_default_str();
    s->add_option("--threads", c.threads, "OpenMP threads (fallback: NCU_THREADS, then 1)");
    s->add_option("--out", c.out, "write the JSON report here instead of stdout");
    if (with_grid) {
      s->add_option("--n1", c.n1)->capture_default_str();
      s->add_option("--n2", c.n2)->capture_default_str();
      s->add_option("--L1", c.L1, "half width along x1")->capture_default_str();
      s->add_option("--L2", c.L2, "half width along x2")->capture_default_str();
    }
    if (with_state) {
      s->add_option("--state", c.state, "state file; default is a Gaussian");
      s->add_option("--ga", c.ga, "Gaussian width parameter along x1")->capture_default_str();
      s->add_option("--gb", c.gb, "Gaussian width parameter along x2")->capture_default_str();
      s->add_option("--gx1", c.gx1, "Gaussian center x1")->capture_default_str();
      s->add_option("--gx2", c.gx2, "Gaussian center x2")->capture_default_str();
    }
  };

  std::vector<Command> commands;
  std::string selected;
  auto sub = [&](const std::string& name, const std::string& help, bool grid, bool state) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, grid, state);
    s->callback([&selected, name] { selected = name; });
    return s;
  };

  // constants
  sub("constants", "derived constants of the realization", false, false);
  commands.push_back({"constants", [] { return json::object(); }, [&] { return params_json(params_of(c)); }});

  // commutators
  int n_states = 10;
  double comm_tol = 1e-6;
  {
    auto* s = sub("commutators", "check the commutation relations on seeded states", true, false);
    s->add_option("--states", n_states)->capture_default_str();
    s->add_option("--tol", comm_tol)->capture_default_str();
  }
  commands.push_back({"commutators", [&] { return json{{"states", n_states}, {"tol", comm_tol}}; }, [&] {
                        const GridSpec g = grid_of(c);
                        std::vector<WaveFunction> st;
                        for (int i = 0; i < n_states; ++i) st.push_back(hermite_state(g, c.seed + i));
                        const auto rep = verify_algebra(params_of(c), st, comm_tol);
                        json pairs = json::array();
                        for (const auto& pc : rep.pairs)
                          pairs.push_back({{"u", to_string(pc.u)}, {"v", to_string(pc.v)}, {"max_error", pc.max_error}});
                        const auto rec = reconstruct_hw(params_of(c), st.front());
                        json r = {{"pairs", pairs},
                                  {"max_error", rep.max_error},
                                  {"passed", rep.passed},
                                  {"reconstruction_max_deviation", rec.max_deviation}};
                        if (!rep.passed) throw InvariantViolated{r};
                        return r;
                      }});

  // dispersion
  std::string op_name = "Q1";
  {
    auto* s = sub("dispersion", "expectation and dispersion of an operator", true, true);
    s->add_option("--op", op_name, "Q1, Q2, P1, P2, X1, X2, Xi1, Xi2 or R")->capture_default_str();
  }
  commands.push_back({"dispersion", [&] { return json{{"op", op_name}}; }, [&] {
                        const WaveFunction f = state_of(c);
                        const auto a = assemble(tag_from_string(op_name), params_of(c), f.grid());
                        const cplx e = expectation(a, f);
                        return json{{"expectation_re", e.real()},
                                    {"expectation_im", e.imag()},
                                    {"dispersion", dispersion(a, f, e.real())}};
                      }});

  // robertson
  std::string alpha_name = "q1q2";
  {
    auto* s = sub("robertson", "Robertson product and commutator bound", true, true);
    s->add_option("--alpha", alpha_name, "q1q2, p1p2, q1p1 or q2p2")->capture_default_str();
  }
  commands.push_back({"robertson", [&] { return json{{"alpha", alpha_name}}; }, [&] {
                        const WaveFunction f = state_of(c);
                        const AlgebraParams p = params_of(c);
                        const auto a = PairAlpha::parse(alpha_name);
                        const double cu = expectation(assemble(a.u(), p, f.grid()), f).real();
                        const double cv = expectation(assemble(a.v(), p, f.grid()), f).real();
                        const auto rep = robertson(a, p, f, cu, cv);
                        json r = {{"lhs", rep.robertson_lhs}, {"rhs", rep.robertson_rhs},
                                  {"functional", rep.functional_value}, {"center_u", cu}, {"center_v", cv}};
                        if (p.epsilon > 0.0 && !(a.u() == Tag::Q1 && p.theta == 0.0)) {
                          try {
                            const auto nl = nullifying_translation(a, p, f);
                            r["nullifier"] = {{"x1_shift", nl.x0[0]}, {"rhs_after", nl.residual_rhs}};
                          } catch (const Error& e) {
                            r["nullifier"] = {{"error", e.code()}};
                          }
                        }
                        if (rep.robertson_lhs < rep.robertson_rhs - 1e-8) throw InvariantViolated{r};
                        return r;
                      }});

  // minimize / spectrum
  double solver_tol = 1e-8, guard = 50.0, stagnation = 1e-12;
  int max_iter = 6000, nev = 4;
  std::string save_state;
  for (const char* name : {"minimize", "spectrum"}) {
    auto* s = sub(name, std::string(name) == "minimize" ? "ground state of H = u^2 + v^2" : "lowest eigenvalues",
                  true, false);
    s->add_option("--alpha", alpha_name)->capture_default_str();
    s->add_option("--tol", solver_tol)->capture_default_str();
    s->add_option("--max-iter", max_iter)->capture_default_str();
    s->add_option("--guard", guard, "guard wall height, 0 disables")->capture_default_str();
    s->add_option("--stagnation", stagnation, "relative Ritz change that counts as stalled")->capture_default_str();
    if (std::string(name) == "minimize")
      s->add_option("--save-state", save_state, "write the ground state to this file");
    else
      s->add_option("--k", nev)->capture_default_str();
  }
  auto solver_opts = [&] {
    SolverOptions o;
    o.tol = solver_tol;
    o.max_iter = max_iter;
    o.seed = c.seed;
    o.guard_height = guard;
    o.stagnation = stagnation;
    return o;
  };
  auto solver_json = [&] {
    return json{{"alpha", alpha_name}, {"tol", solver_tol}, {"max_iter", max_iter}, {"guard", guard},
                {"stagnation", stagnation}};
  };
  commands.push_back({"minimize", solver_json, [&] {
                        const auto a = PairAlpha::parse(alpha_name);
                        const AlgebraParams p = params_of(c);
                        const auto gs = ground_state(a, p, grid_of(c), solver_opts());
                        if (!save_state.empty()) write_state(save_state, gs.state);
                        return json{{"nu0", gs.nu0},
                                    {"F_at_state", functional_F(a, p, gs.state)},
                                    {"residual", gs.residual},
                                    {"iterations", gs.iterations},
                                    {"converged_by", gs.converged_by},
                                    {"guard_energy", gs.guard_energy}};
                      }});
  commands.push_back({"spectrum", [&] { auto j = solver_json(); j["k"] = nev; return j; }, [&] {
                        const auto ev = spectrum_low(PairAlpha::parse(alpha_name), params_of(c), grid_of(c), nev,
                                                     solver_opts());
                        json rows = json::array();
                        for (const auto& rp : ev) rows.push_back({{"value", rp.value}, {"residual", rp.residual}});
                        return json{{"eigenvalues", rows}};
                      }});

  // hpw
  std::vector<double> a_values{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  {
    auto* s = sub("hpw", "Gaussian product along b = a^(-3/2)", false, false);
    s->add_option("--a", a_values, "width parameters")->delimiter(',');
  }
  commands.push_back({"hpw", [&] { return json{{"a", a_values}}; }, [&] {
                        const AlgebraParams p = params_of(c);
                        json rows = json::array();
                        for (const auto& g : hpw_sweep(p, a_values))
                          rows.push_back({{"a", g.a}, {"b", g.b}, {"dq1", g.dq1}, {"dp1", g.dp1},
                                          {"product", g.product}, {"below_half", g.product < 0.5}});
                        return json{{"rows", rows}, {"limit", hpw_limit(p)}};
                      }});

  // minlength
  int kmax = 6;
  sub("minlength", "dispersions along squeezing Gaussian families", false, false)
      ->add_option("--kmax", kmax)
      ->capture_default_str();
  commands.push_back({"minlength", [&] { return json{{"kmax", kmax}}; }, [&] {
                        const auto t = minimal_length_probe(params_of(c), kmax);
                        json q = json::array(), pr = json::array();
                        for (const auto& g : t.q_rows) q.push_back({{"a", g.a}, {"b", g.b}, {"dq1", g.dq1}});
                        for (const auto& g : t.p_rows) pr.push_back({{"a", g.a}, {"b", g.b}, {"dp1", g.dp1}});
                        return json{{"q_rows", q}, {"p_rows", pr}};
                      }});

  // scaling
  double s_factor = 2.0;
  int n_pow = 1, m_pow = 1;
  {
    auto* s = sub("scaling", "dispersion scaling under dilation", true, true);
    s->add_option("--s", s_factor)->capture_default_str();
    s->add_option("--n-pow", n_pow)->capture_default_str();
    s->add_option("--m-pow", m_pow)->capture_default_str();
  }
  commands.push_back({"scaling", [&] { return json{{"s", s_factor}, {"n", n_pow}, {"m", m_pow}}; }, [&] {
                        const auto r = scaling_demo(state_of(c), n_pow, m_pow, s_factor);
                        return json{{"dA", r.dA}, {"dB", r.dB}, {"dA_ratio", r.dA_ratio},
                                    {"dB_ratio", r.dB_ratio}, {"product_ratio", r.product_ratio},
                                    {"expected_product_ratio", std::pow(std::abs(s_factor), n_pow - m_pow)}};
                      }});

  // entropy
  int n1d = 1024;
  double L1d = 20.0, width1d = 1.0;
  {
    auto* s = sub("entropy", "position plus momentum entropy of a 1D Gaussian", false, false);
    s->add_option("--n", n1d)->capture_default_str();
    s->add_option("--L", L1d)->capture_default_str();
    s->add_option("--width", width1d, "exp(-x^2 / width)")->capture_default_str();
  }
  commands.push_back({"entropy", [&] { return json{{"n", n1d}, {"L", L1d}, {"width", width1d}}; }, [&] {
                        std::vector<cplx> f(n1d);
                        const double h = 2.0 * L1d / n1d;
                        double nrm = 0.0;
                        for (int i = 0; i < n1d; ++i) {
                          const double x = -L1d + i * h;
                          f[i] = std::exp(-x * x / width1d);
                          nrm += std::norm(f[i]) * h;
                        }
                        for (auto& v : f) v /= std::sqrt(nrm);
                        const auto e = entropic_check(f, L1d);
                        json r = {{"position", e.position}, {"momentum", e.momentum}, {"sum", e.sum},
                                  {"bound", e.bound}, {"holds", e.holds}};
                        if (!e.holds) throw InvariantViolated{r};
                        return r;
                      }});

  // modnorm
  int stride = 2;
  sub("modnorm", "modulation-space norm and norm equivalence", true, true)
      ->add_option("--stride", stride)
      ->capture_default_str();
  commands.push_back({"modnorm", [&] { return json{{"stride", stride}}; }, [&] {
                        const auto rep = norm_equivalence_report(state_of(c), params_of(c), StftLattice{stride});
                        json al = json::array();
                        for (const auto& a : rep.alphas)
                          al.push_back({{"alpha", a.alpha}, {"norm_alpha_sq", a.norm_alpha_sq},
                                        {"K2", a.constants.K2}, {"C", a.constants.C}, {"lower_ok", a.lower_ok},
                                        {"upper_ok", a.upper_ok}});
                        json r = {{"norm_B_sq", rep.norm_B_sq}, {"norm_M", rep.norm_M}, {"ratio_M_B", rep.ratio_M_B},
                                  {"real_valued", rep.real_valued}, {"sandwich_ok", rep.sandwich_ok},
                                  {"alphas", al}};
                        if (rep.real_valued && !rep.sandwich_ok) throw InvariantViolated{r};
                        return r;
                      }});

  // weights
  int samples = 20000;
  std::vector<double> R_mult{1, 2, 4};
  {
    auto* s = sub("weights", "moderateness and decay of the weight", false, false);
    s->add_option("--samples", samples)->capture_default_str();
    s->add_option("--R", R_mult, "radii in units of 2 lambda / E")->delimiter(',');
  }
  commands.push_back({"weights", [&] { return json{{"samples", samples}, {"R_units", R_mult}}; }, [&] {
                        const AlgebraParams p = params_of(c);
                        if (p.E == 0.0) throw DomainError("modspace", "E = 0: no decay radius");
                        std::vector<double> R;
                        for (double m : R_mult) R.push_back(m * 2.0 * p.lambda / std::abs(p.E));
                        const auto rep = weight_checks(p, R, samples, c.seed);
                        json d = json::array();
                        for (const auto& k : rep.decay)
                          d.push_back({{"R", k.R}, {"sampled_max", k.sampled_max}, {"bound", k.bound},
                                       {"holds", k.holds}});
                        json r = {{"moderate_C", rep.moderate_C}, {"moderate_C_doubled", rep.moderate_C_doubled},
                                  {"decay", d}, {"passed", rep.passed}};
                        if (!rep.passed) throw InvariantViolated{r};
                        return r;
                      }});

  // wdw
  std::string kind = "noncanonical", range = "0:60", tail, ic_str = "1:0";
  double c_or_a = 0.0;
  int csv_points = 2000;
  bool from_minimum = false;
  {
    auto* s = sub("wdw", "zero-energy reduced WDW equation", false, false);
    s->add_option("--kind", kind, "canonical, noncanonical or constant")->capture_default_str();
    s->add_option("--a,--c", c_or_a, "a (noncanonical), c (canonical) or the constant value")
        ->capture_default_str();
    s->add_option("--range", range, "lo:hi")->capture_default_str();
    s->add_option("--tail", tail, "lo:hi for the envelope fit; default is the upper two thirds");
    s->add_option("--ic", ic_str, "phi:phi' at the left end")->capture_default_str();
    s->add_flag("--from-minimum", from_minimum, "start at the potential minimum inside the range");
    s->add_option("--csv", c.csv, "write x, phi, V samples here");
    s->add_option("--csv-points", csv_points)->capture_default_str();
  }
  commands.push_back({"wdw",
                      [&] {
                        return json{{"kind", kind}, {"c_or_a", c_or_a}, {"range", range}, {"tail", tail},
                                    {"ic", ic_str}, {"from_minimum", from_minimum}};
                      },
                      [&] {
                        const wdw::PotentialSpec spec{wdw::kind_from_string(kind), params_of(c), c_or_a};
                        auto [lo, hi] = parse_range(range);
                        const auto ic = parse_range(ic_str);
                        json r;
                        if (from_minimum) {
                          const auto m = wdw::find_minimum(spec, {lo, hi});
                          r["minimum"] = {{"x", m.x}, {"V", m.value}, {"curvature", m.curvature}};
                          lo = m.x;
                        }
                        const auto sol = wdw::solve_zero_energy(spec, lo, hi, {ic.first, ic.second});
                        const auto res = wdw::ode_residual(spec, sol);
                        const auto tl = tail.empty() ? std::pair{lo + (hi - lo) / 3.0, hi} : parse_range(tail);
                        r["method"] = sol.method;
                        r["steps"] = sol.steps();
                        r["clamped"] = sol.clamped;
                        r["x_begin"] = sol.x_begin();
                        r["residual_relative"] = res.relative;
                        r["tail"] = {tl.first, tl.second};
                        try {
                          r["envelope_exponent"] = wdw::envelope_exponent(sol, tl);
                        } catch (const Error& e) {
                          r["envelope_exponent_error"] = e.code();
                        }
                        if (!c.csv.empty()) {
                          std::ofstream f(c.csv);
                          if (!f) throw DomainError("cli", "cannot write " + c.csv);
                          f << "x,phi,V\n";
                          f.precision(17);
                          for (int i = 0; i <= csv_points; ++i) {
                            const double x = sol.x_begin() + (sol.x_end() - sol.x_begin()) * i / csv_points;
                            f << x << ',' << sol.eval(x) << ',' << wdw::potential_eval(spec, x).value << '\n';
                          }
                        }
                        if (res.relative > 1e-6) throw InvariantViolated{r};
                        return r;
                      }});

  // probe-coherent
  std::string beta_name = "p1p2";
  {
    auto* s = sub("probe-coherent", "commutator of two Hamiltonians and ground-state overlap", true, false);
    s->add_option("--alpha", alpha_name)->capture_default_str();
    s->add_option("--beta", beta_name)->capture_default_str();
    s->add_option("--guard", guard)->capture_default_str();
  }
  commands.push_back({"probe-coherent", [&] { return json{{"alpha", alpha_name}, {"beta", beta_name}, {"guard", guard}}; },
                      [&] {
                        const GridSpec g = grid_of(c);
                        SolverOptions o = solver_opts();
                        const auto e = coherent_state_probe(PairAlpha::parse(alpha_name), PairAlpha::parse(beta_name),
                                                            params_of(c), g, hermite_state(g, c.seed), o);
                        return json{{"commutator_norm", e.commutator_norm}, {"overlap", e.overlap},
                                    {"nu_alpha", e.nu_alpha}, {"nu_beta", e.nu_beta}};
                      }});

  // selftest
  std::vector<int> only;
  sub("selftest", "run the acceptance suite", false, false)->add_option("--only", only)->delimiter(',');
  commands.push_back({"selftest", [&] { return json{{"only", only}}; }, [&] {
                        acceptance::Options o;
                        o.only = only;
                        o.on_result = [](const acceptance::CriterionResult& r) {
                          std::cerr << acceptance::format_line(r) << std::endl;
                        };
                        const auto results = acceptance::run(o);
                        json rows = json::array();
                        for (const auto& r : results)
                          rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"gating", r.gating},
                                          {"seconds", r.seconds}, {"detail", r.detail}, {"data", r.data}});
                        json out = {{"criteria", rows}, {"all_passed", acceptance::all_gating_passed(results)}};
                        if (!acceptance::all_gating_passed(results)) throw InvariantViolated{out};
                        return out;
                      }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (c.threads <= 0) {
    const char* env = std::getenv("NCU_THREADS");
    c.threads = env ? std::max(1, std::atoi(env)) : 1;
  }
  kernels::set_threads(c.threads);

  for (const auto& cmd : commands) {
    if (cmd.name != selected) continue;
    json report = {{"version", NCQM_VERSION}};
    try {
      report["config"] = config_of(c, cmd.name, cmd.extra());
      report["result"] = cmd.body();
      emit(c, report);
      return 0;
    } catch (const InvariantViolated& v) {
      report["result"] = v.report;
      report["invariant_violated"] = true;
      emit(c, report);
      return 2;
    } catch (const Error& e) {
      std::cerr << "error " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}

}  // namespace ncqm::cli
