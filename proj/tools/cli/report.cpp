#include "cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace spinflip::cli {
namespace {

// Text output only: rounding residue below this prints as zero.
constexpr double kPrintZero = 1e-14;

double clean(double x) { return std::abs(x) < kPrintZero ? 0.0 : x; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json reals(std::span<const double> xs) { return json(std::vector<double>(xs.begin(), xs.end())); }

}  // namespace

json to_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

json to_json(const CircleFit& fit) {
  return {{"found", fit.found()},
          {"normal", fit.found() ? to_json(fit.circle->normal) : json(nullptr)},
          {"residual", fit.residual}};
}

json to_json(const Transformability& t) {
  return std::visit(
      overloaded{
          [](const ExactTransform& e) -> json {
            return {{"verdict", "exact"}, {"phases", reals(e.phases)}};
          },
          [](const Infeasible& f) -> json {
            return {{"verdict", "infeasible"},
                    {"pair", {f.i, f.j}},
                    {"kind", f.kind == Infeasible::Kind::Modulus ? "modulus" : "phase"},
                    {"residual", f.residual}};
          },
      },
      t);
}

json to_json(const FeasibilityResult& r) {
  return std::visit(
      overloaded{
          [](const ExactTransform& e) -> json {
            return {{"verdict", "exact"}, {"phases", reals(e.phases)}};
          },
          [](const ProbabilisticTransform& p) -> json {
            return {{"verdict", "probabilistic"},
                    {"gamma", p.gamma},
                    {"phases", reals(p.phases)},
                    {"certificate", p.certificate}};
          },
          [](const Impossible& i) -> json {
            if (const auto* rank = std::get_if<RankObstruction>(&i.reason)) {
              return {{"verdict", "impossible"},
                      {"reason", "rank_obstruction"},
                      {"rank_in", rank->rank_in},
                      {"rank_out", rank->rank_out}};
            }
            return {{"verdict", "impossible"}, {"reason", "psd_infeasible"}};
          },
      },
      r);
}

json to_json(const UsdResult& r) { return {{"value", r.value}, {"gammas", reals(r.gammas)}}; }

json to_json(const BasisActionReport& r) {
  return {{"a", r.a},
          {"b", r.b},
          {"c", r.c},
          {"c1", {r.c1.real(), r.c1.imag()}},
          {"c2", {r.c2.real(), r.c2.imag()}},
          {"c_norm", r.c_norm},
          {"leakage", r.leakage},
          {"predicted_azimuth", r.predicted_azimuth},
          {"circle_azimuth", r.circle_azimuth},
          {"azimuth_residual", r.azimuth_residual},
          {"consistent", r.consistent()}};
}

json to_json(const AsymmetryReport& report, std::span<const std::string> labels, double tol) {
  json vectors = json::array();
  for (const auto& v : report.vectors) vectors.push_back(to_json(v));
  json out = {
      {"vectors", vectors},
      {"tol", tol},
      {"circle", to_json(report.circle)},
      {"dims", {{"parallel", report.dim_parallel}, {"antiparallel", report.dim_antiparallel}}},
      {"exact_pa", to_json(report.exact_pa)},
      {"exact_ap", to_json(report.exact_ap)},
      {"protrans_pa", to_json(report.protrans_pa)},
      {"protrans_ap", to_json(report.protrans_ap)},
      {"usd_parallel", to_json(report.usd_parallel)},
      {"usd_antiparallel", to_json(report.usd_antiparallel)},
  };
  if (!labels.empty()) out["labels"] = std::vector<std::string>(labels.begin(), labels.end());
  return out;
}

std::string format_real(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << clean(x);
  return s.str();
}

std::string format_complex(Complex z) {
  const double re = clean(z.real());
  const double im = clean(z.imag());
  if (im == 0.0) return format_real(re);
  std::string imag_part;
  if (std::abs(im) == 1.0) {
    imag_part = im < 0 ? "-i" : "i";
  } else {
    imag_part = format_real(im) + "i";
  }
  if (re == 0.0) return imag_part;
  return format_real(re) + (im < 0 ? "" : "+") + imag_part;
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r == 0 ? "[" : ", [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ", ";
      out += format_complex(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

std::string format_vector(const BlochVector& v) {
  return "(" + format_real(v.x) + ", " + format_real(v.y) + ", " + format_real(v.z) + ")";
}

std::string describe(const CircleFit& fit) {
  if (fit.found()) {
    return "yes, normal " + format_vector(fit.circle->normal) + ", residual " +
           format_real(fit.residual);
  }
  return "no (best residual " + format_real(fit.residual) + ")";
}

std::string describe(const Transformability& t) {
  if (const auto* f = std::get_if<Infeasible>(&t)) {
    return std::string("infeasible: ") +
           (f->kind == Infeasible::Kind::Modulus ? "modulus" : "phase") + " mismatch at pair (" +
           std::to_string(f->i) + ", " + std::to_string(f->j) + "), residual " +
           format_real(f->residual);
  }
  std::string out = "exact, phases [";
  const auto& phases = std::get<ExactTransform>(t).phases;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    out += (i ? ", " : "") + format_real(phases[i]);
  }
  return out + "]";
}

std::string describe(const FeasibilityResult& r) {
  return std::visit(
      overloaded{
          [](const ExactTransform& e) { return describe(Transformability{e}); },
          [](const ProbabilisticTransform& p) {
            return "probabilistic, gamma* = " + format_real(p.gamma) + ", certificate " +
                   format_real(p.certificate);
          },
          [](const Impossible& i) -> std::string {
            if (const auto* rank = std::get_if<RankObstruction>(&i.reason)) {
              return "impossible: rank obstruction (" + std::to_string(rank->rank_in) + " < " +
                     std::to_string(rank->rank_out) + ")";
            }
            return "impossible: no positive success probability";
          },
      },
      r);
}

void print_report(std::ostream& out, const AsymmetryReport& report,
                  std::span<const std::string> labels) {
  out << "vectors:\n";
  for (std::size_t i = 0; i < report.vectors.size(); ++i) {
    out << "  [" << i << "] " << format_vector(report.vectors[i]);
    if (i < labels.size()) out << "  " << labels[i];
    out << "\n";
  }
  out << "great circle:        " << describe(report.circle) << "\n"
      << "span dims (P, A):    (" << report.dim_parallel << ", " << report.dim_antiparallel
      << ")\n"
      << "exact P->A:          " << describe(report.exact_pa) << "\n"
      << "exact A->P:          " << describe(report.exact_ap) << "\n"
      << "probabilistic P->A:  " << describe(report.protrans_pa) << "\n"
      << "probabilistic A->P:  " << describe(report.protrans_ap) << "\n"
      << "USD success P:       " << format_real(report.usd_parallel.value) << "\n"
      << "USD success A:       " << format_real(report.usd_antiparallel.value) << "\n";
}

}  // namespace spinflip::cli
