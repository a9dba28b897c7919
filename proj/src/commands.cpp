#include "hcircle/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "hcircle/bnumbers.hpp"
#include "hcircle/circles.hpp"
#include "hcircle/equidist.hpp"
#include "hcircle/verify.hpp"

namespace hcircle {

namespace {

Format table_format(const CommandArgs& args) {
  const Format f = args.format.value_or(Format::csv);
  if (f == Format::svg) throw UsageError("svg output is only available for the plot command");
  return f;
}

const std::vector<int>& require_q(const CommandArgs& args) {
  if (args.qs.empty()) throw UsageError("--q is required");
  return args.qs;
}

double require_x(const CommandArgs& args, double lo, double hi) {
  if (!args.x) throw UsageError("--x is required");
  const double x = *args.x;
  if (!std::isfinite(x) || x < lo || x > hi) {
    std::ostringstream os;
    os << "--x must lie in [" << format_double(lo) << ", " << format_double(hi) << "]";
    throw UsageError(os.str());
  }
  return x;
}

Json q_meta(const std::vector<int>& qs) {
  if (qs.size() == 1) return qs.front();
  return "all";
}

CommandResult emit(const Table& t, const CommandArgs& args, std::ostream& os, int exit_code = 0) {
  t.write(os, table_format(args));
  return {exit_code, t.row_count()};
}

Cell i(i64 v) { return Cell{static_cast<std::int64_t>(v)}; }
Cell u(u64 v) { return Cell{static_cast<std::uint64_t>(v)}; }
Cell d(double v) { return Cell{v}; }
Cell b(bool v) { return Cell{v}; }

}  // namespace

std::vector<int> parse_q_selector(const std::string& s) {
  if (s == "all") return {kAllQ.begin(), kAllQ.end()};
  for (int q : kAllQ)
    if (s == std::to_string(q)) return {q};
  throw UsageError("--q must be one of 3, 4, 7, 8, 11, 19, 43, 67, 163 or all (got '" + s + "')");
}

CommandResult cmd_verify(const CommandArgs& args, std::ostream& os) {
  VerifyOptions opt;
  opt.qs = require_q(args);
  opt.max_two_n = args.max_two_n.value_or(200);
  opt.threads = args.threads;
  opt.inject_fault = args.inject_fault;
  if (opt.max_two_n < 1 || opt.max_two_n > kVerifyMaxTwoN)
    throw UsageError("--max-two-n must lie in [1, " + std::to_string(kVerifyMaxTwoN) + "]");
  table_format(args);
  VerifyReport report;
  try {
    report = run_verify(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Table t("verify", {"q", "identity", "checks", "status"});
  t.set_meta("q", q_meta(opt.qs));
  t.set_meta("max_two_n", opt.max_two_n);
  if (!opt.inject_fault.empty()) t.set_meta("inject_fault", opt.inject_fault);
  for (const auto& f : report.fields) {
    for (const auto& tally : f.tallies) {
      const bool failed = f.failure && f.failure->identity == tally.identity;
      t.add_row({i(f.q), Cell{tally.identity}, u(tally.checks), Cell{std::string(failed ? "FAIL" : "ok")}});
    }
    std::ostringstream note;
    note << "q=" << f.q << " radii_scanned=" << f.radii_scanned << " valid_radii=" << f.valid_radii
         << " matrices=" << f.matrices << " points=" << f.points;
    t.add_note(note.str());
  }
  if (report.first_failure) {
    const auto& ff = *report.first_failure;
    t.add_note("FAIL identity=" + ff.identity + " q=" + std::to_string(ff.q) + " two_n=" + std::to_string(ff.two_n) +
               " (" + ff.detail + ")");
    t.set_summary("result", "FAIL");
    t.set_summary("failing_identity", ff.identity);
    t.set_summary("failing_q", ff.q);
    t.set_summary("failing_two_n", ff.two_n);
  } else {
    t.set_summary("result", "PASS");
  }
  return emit(t, args, os, report.ok() ? 0 : 1);
}

CommandResult cmd_circle(const CommandArgs& args, std::ostream& os) {
  const auto& qs = require_q(args);
  if (args.two_n.empty()) throw UsageError("--two-n is required");
  if (args.k && *args.k < 1) throw UsageError("--k must be at least 1");
  table_format(args);

  Table t("circle", {"q", "two_n", "a", "b", "c", "d", "r", "u", "s", "t", "h", "Y", "x", "y", "angle"});
  t.set_meta("q", q_meta(qs));
  for (int q : qs) {
    const Discriminant f(q);
    for (i64 two_n : args.two_n) {
      if (mod(two_n - q, 2) != 0)
        throw UsageError("--two-n " + std::to_string(two_n) + " has the wrong parity for q=" + std::to_string(q));
      if (two_n > (i64{1} << 31)) throw UsageError("--two-n must not exceed 2^31");
      const std::string where = "q=" + std::to_string(q) + " two_n=" + std::to_string(two_n);
      if (two_n <= q) {
        t.add_note(where + ": not an arithmetic radius off the centre (two_n <= q); no points");
        continue;
      }
      const Radius r(f, two_n);
      if (!r.is_valid()) {
        t.add_note(where + ": N+ N- is not a norm; the circle carries no lattice points");
        continue;
      }
      const auto pairs = enumerate_pairs(r);
      const auto gammas = pairs_to_matrices(r, pairs);
      for (const auto& g : gammas) {
        const SplitCoords v = split_coordinates(f, g);
        const IntegerCoords c = integer_coords(f, g);
        const CirclePoint p{c.h, c.Y};
        t.add_row({i(q), i(two_n), i(g.a()), i(g.b()), i(g.c()), i(g.d()), i(v.r), i(v.u), i(v.s), i(v.t), i(c.h),
                   i(c.Y), d(f.lambda() * static_cast<double>(c.h)), d(static_cast<double>(c.Y) / 2.0),
                   d(point_angle(f, p))});
      }
      const int K = args.k.value_or(default_et_terms(two_n));
      const DiscrepancyReport rep = discrepancy_report(r, K);
      std::ostringstream note;
      note << where << ": gamma_count=" << rep.gamma_count << " point_count=" << rep.point_count
           << " discrepancy=" << format_double(rep.discrepancy) << " et_bound=" << format_double(rep.et_bound)
           << " K=" << rep.et_terms;
      t.add_note(note.str());
    }
  }
  return emit(t, args, os);
}

CommandResult cmd_survey(const CommandArgs& args, std::ostream& os) {
  const auto& qs = require_q(args);
  const double X = require_x(args, 16, kSurveyMaxX);
  table_format(args);

  Table t("survey", {"q", "two_n", "omega", "Omega", "in_B_flat", "log2_r_star", "point_count", "gamma_count",
                     "discrepancy"});
  t.set_meta("q", q_meta(qs));
  t.set_meta("x", X);
  for (int q : qs) {
    const SurveyResult res = survey(Discriminant(q), X, args.threads);
    for (const auto& row : res.rows)
      t.add_row({i(q), i(row.two_n), i(row.omega), i(row.Omega), b(row.in_B_flat), d(row.log2_r_star),
                 u(row.point_count), u(row.gamma_count), d(row.discrepancy)});
    const SurveySummary& s = res.summary;
    const std::string p = qs.size() == 1 ? "" : "q" + std::to_string(q) + "_";
    t.set_summary(p + "count", s.count);
    t.set_summary(p + "density_ratio", s.density_ratio);
    t.set_summary(p + "density_ratio_half", s.density_ratio_half);
    t.set_summary(p + "omega_over_loglog_median", s.omega_over_loglog.median);
    t.set_summary(p + "log2_rstar_over_loglog_q25", s.log2_rstar_over_loglog.q25);
    t.set_summary(p + "log2_rstar_over_loglog_median", s.log2_rstar_over_loglog.median);
    t.set_summary(p + "log2_rstar_over_loglog_q75", s.log2_rstar_over_loglog.q75);
    t.set_summary(p + "omega_outside_fraction", s.omega_outside_fraction);
    for (const auto& df : s.discrepancy_fractions) {
      char key[64];
      std::snprintf(key, sizeof key, "fraction_D_below_gamma_pow_minus_%.4f", df.exponent);
      t.set_summary(p + key, df.fraction);
    }
    t.set_summary(p + "b_flat_count", s.b_flat_count);
    if (s.degenerate) t.add_note("q=" + std::to_string(q) + ": fewer than 5 radii, quantiles not meaningful");
  }
  return emit(t, args, os);
}

CommandResult cmd_count(const CommandArgs& args, std::ostream& os) {
  const auto& qs = require_q(args);
  const double x = require_x(args, 1, kCountMaxX);
  table_format(args);

  Table t("count", {"q", "x", "max_two_n", "off_centre_sum", "centre_stabilizer", "centre_formula", "sum",
                    "direct_count", "main_term", "ratio"});
  t.set_meta("q", q_meta(qs));
  t.set_meta("x", x);
  for (int q : qs) {
    const CircleProblemResult r = circle_problem_sum(Discriminant(q), x, x <= kDirectCountLimit);
    t.add_row({i(q), d(x), i(r.max_two_n), u(r.off_centre_sum), u(r.centre_stabilizer), u(r.centre_formula),
               u(r.sum), r.direct_count ? u(*r.direct_count) : Cell{}, d(r.main_term),
               d(static_cast<double>(r.sum) / r.main_term)});
    if (r.direct_count && *r.direct_count != r.sum) {
      t.add_note("q=" + std::to_string(q) + ": sum differs from the direct count");
      t.write(os, table_format(args));
      return {1, t.row_count()};
    }
  }
  if (x > kDirectCountLimit) t.add_note("direct_count is only computed for x <= 1000");
  return emit(t, args, os);
}

CommandResult cmd_bnumbers(const CommandArgs& args, std::ostream& os) {
  const auto& qs = require_q(args);
  const i64 h = args.h.value_or(1);
  table_format(args);

  if (args.y) {
    const double y = *args.y;
    if (!std::isfinite(y) || y < 1 || y > 1e6) throw UsageError("--y must lie in [1, 1e6]");
    if (h == 0) throw UsageError("--h must be nonzero with --y");
    if (args.s) {
      const double s = *args.s;
      if (!std::isfinite(s) || s <= 0) throw UsageError("--s must be positive");
      if (std::pow(y, 1.0 / s) <= 2) throw UsageError("--y and --s give z = y^(1/s) <= 2");
      Table t("bnumbers", {"q", "h", "y", "s", "z", "n0", "n1", "sifted", "b_star", "d12", "d14", "other", "holds"});
      t.set_meta("q", q_meta(qs));
      t.set_meta("mode", "decomposition");
      bool all_hold = true;
      for (int q : qs) {
        const Discriminant f(q);
        const ProgressionSpec spec = build_progression(f, h);
        const SiftedDecomposition dec = sifted_decomposition(f, spec, y, s);
        all_hold = all_hold && dec.holds();
        t.add_row({i(q), i(h), d(y), d(s), d(dec.z), u(spec.n0), u(spec.n1), u(dec.sifted), u(dec.b_star),
                   u(dec.d12), u(dec.d14), u(dec.other), b(dec.holds())});
      }
      return emit(t, args, os, all_hold ? 0 : 1);
    }
    if (!args.z) throw UsageError("--y needs --s or --z");
    const double z = *args.z;
    if (!std::isfinite(z) || z <= 2) throw UsageError("--z must exceed 2");
    Table t("bnumbers", {"q", "h", "y", "z", "n0", "n1", "sifted", "b_star"});
    t.set_meta("q", q_meta(qs));
    t.set_meta("mode", "sifted");
    for (int q : qs) {
      const Discriminant f(q);
      const ProgressionSpec spec = build_progression(f, h);
      t.add_row({i(q), i(h), d(y), d(z), u(spec.n0), u(spec.n1), u(sifted_count(f, spec, y, z)),
                 u(b_star_count(f, spec, y))});
    }
    return emit(t, args, os);
  }

  const double x = require_x(args, 10, kBnumbersMaxX);
  std::vector<double> xs;
  for (double p = 10; p <= x; p *= 10) xs.push_back(p);
  if (xs.back() != x) xs.push_back(x);
  Table t("bnumbers", {"q", "h", "x", "B", "B_log_x_over_x"});
  t.set_meta("q", q_meta(qs));
  t.set_meta("mode", "curve");
  t.set_meta("h", h);
  for (int q : qs) {
    const Discriminant f(q);
    for (double xv : xs) {
      const u64 B = shifted_count(f, xv, h, args.threads);
      t.add_row({i(q), i(h), d(xv), u(B), d(static_cast<double>(B) * std::log(xv) / xv)});
    }
  }
  return emit(t, args, os);
}

namespace {

const char* const kPalette[] = {"#e377c2", "#8c564b", "#1f77b4", "#ff7f0e", "#2ca02c",
                                "#d62728", "#9467bd", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

CommandResult cmd_plot(const CommandArgs& args, std::ostream& os) {
  const auto& qs = require_q(args);
  if (qs.size() != 1) throw UsageError("plot needs a single --q");
  if (args.format.value_or(Format::svg) != Format::svg) throw UsageError("plot only writes svg");
  if (args.two_n.empty()) throw UsageError("--two-n is required");
  const int q = qs.front();
  const Discriminant f(q);
  const double lambda = f.lambda();
  const double mu = f.two_mu() / 2.0;

  struct Drawn {
    i64 two_n;
    double cosh_rho;
    std::vector<UnimodularMatrix> gammas;
    double n_plus;
  };
  std::vector<Drawn> drawn;
  std::vector<std::string> skipped;
  for (i64 two_n : args.two_n) {
    if (mod(two_n - q, 2) != 0)
      throw UsageError("--two-n " + std::to_string(two_n) + " has the wrong parity for q=" + std::to_string(q));
    if (two_n > 100000) throw UsageError("plot accepts --two-n up to 100000");
    if (two_n <= q) {
      skipped.push_back("two_n=" + std::to_string(two_n) + " is not off the centre");
      continue;
    }
    const Radius r(f, two_n);
    if (!r.is_valid()) {
      skipped.push_back("two_n=" + std::to_string(two_n) + " carries no lattice points");
      continue;
    }
    drawn.push_back({two_n, static_cast<double>(two_n) / q, pairs_to_matrices(r, enumerate_pairs(r)),
                     static_cast<double>(r.n_plus())});
  }

  double top = 2 * lambda;
  for (const auto& c : drawn) top = std::max(top, lambda * (c.cosh_rho + std::sqrt(c.cosh_rho * c.cosh_rho - 1)));
  top *= 1.05;
  const double scale = 460.0 / top;
  auto hx = [&](double x) { return 500.0 + (x - mu) * scale; };
  auto hy = [&](double y) { return 480.0 - y * scale; };
  const double R = 230.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1500\" height=\"500\" viewBox=\"0 0 1500 500\">\n";
  svg << "<!-- hcircle plot v" << kOutputVersion << " q=" << q << " -->\n";
  for (const auto& s : skipped) svg << "<!-- skipped: " << s << " -->\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"1500\" height=\"500\" fill=\"white\"/>\n";
  svg << "<g id=\"half-plane\">\n";
  svg << "<line x1=\"0\" y1=\"480.000\" x2=\"1000\" y2=\"480.000\" stroke=\"black\"/>\n";
  svg << "<circle class=\"centre\" cx=\"" << num(hx(mu)) << "\" cy=\"" << num(hy(lambda))
      << "\" r=\"3\" fill=\"black\"/>\n";
  for (std::size_t idx = 0; idx < drawn.size(); ++idx) {
    const auto& c = drawn[idx];
    const char* colour = kPalette[idx % std::size(kPalette)];
    const double sinh_rho = std::sqrt(c.cosh_rho * c.cosh_rho - 1);
    svg << "<circle class=\"h-circle\" data-two-n=\"" << c.two_n << "\" cx=\"" << num(hx(mu)) << "\" cy=\""
        << num(hy(lambda * c.cosh_rho)) << "\" r=\"" << num(lambda * sinh_rho * scale) << "\" fill=\"none\" stroke=\""
        << colour << "\"/>\n";
    for (const auto& g : c.gammas) {
      const PointH w = apply_mobius(g, heegner_point(f));
      svg << "<circle class=\"h-point\" data-two-n=\"" << c.two_n << "\" cx=\"" << num(hx(w.re)) << "\" cy=\""
          << num(hy(w.im)) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    }
  }
  svg << "</g>\n";

  u64 points = 0;
  svg << "<g id=\"disc\" transform=\"translate(1000,0)\">\n";
  svg << "<circle cx=\"250\" cy=\"250\" r=\"" << num(R) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t idx = 0; idx < drawn.size(); ++idx) {
    const auto& c = drawn[idx];
    const char* colour = kPalette[idx % std::size(kPalette)];
    const double rad = std::sqrt((c.cosh_rho - 1) / (c.cosh_rho + 1));
    svg << "<circle class=\"disc-circle\" data-two-n=\"" << c.two_n << "\" cx=\"250\" cy=\"250\" r=\""
        << num(rad * R) << "\" fill=\"none\" stroke=\"" << colour << "\"/>\n";
    for (const auto& g : c.gammas) {
      const IntegerCoords ic = integer_coords(f, g);
      const double px = lambda * static_cast<double>(ic.h) / c.n_plus;
      const double py = static_cast<double>(ic.Y) / 2.0 / c.n_plus;
      svg << "<circle class=\"disc-point\" data-two-n=\"" << c.two_n << "\" cx=\"" << num(250 + R * px)
          << "\" cy=\"" << num(250 - R * py) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
      ++points;
    }
  }
  svg << "</g>\n";
  for (std::size_t idx = 0; idx < drawn.size(); ++idx) {
    const i64 t = drawn[idx].two_n;
    const std::string label = q % 2 ? std::to_string(t) + "/2" : std::to_string(t / 2);
    svg << "<text x=\"10\" y=\"" << 20 + 18 * idx << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\""
        << kPalette[idx % std::size(kPalette)] << "\">radius " << label << " (" << drawn[idx].gammas.size()
        << " points)</text>\n";
  }
  svg << "</svg>\n";
  os << svg.str();
  return {0, points};
}

CommandResult run_command(const std::string& name, const CommandArgs& args, std::ostream& os, std::ostream& err) {
  try {
    if (name == "verify") return cmd_verify(args, os);
    if (name == "circle") return cmd_circle(args, os);
    if (name == "survey") return cmd_survey(args, os);
    if (name == "count") return cmd_count(args, os);
    if (name == "bnumbers") return cmd_bnumbers(args, os);
    if (name == "plot") return cmd_plot(args, os);
    throw UsageError("unknown command '" + name + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return {2, 0};
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return {2, 0};
  }
}

}  // namespace hcircle
