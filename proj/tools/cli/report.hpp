#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinflip/machines.hpp"
#include "spinflip/protrans.hpp"

namespace spinflip::cli {

using nlohmann::json;

json to_json(const BlochVector& v);
json to_json(const ComplexMatrix& m);
json to_json(const CircleFit& fit);
json to_json(const Transformability& t);
json to_json(const FeasibilityResult& r);
json to_json(const UsdResult& r);
json to_json(const BasisActionReport& r);
json to_json(const AsymmetryReport& report, std::span<const std::string> labels, double tol);

// Human-readable forms; reals carry 10 significant digits.
std::string format_real(double x);
std::string format_complex(Complex z);
std::string format_matrix(const ComplexMatrix& m);
std::string format_vector(const BlochVector& v);
std::string describe(const CircleFit& fit);
std::string describe(const Transformability& t);
std::string describe(const FeasibilityResult& r);

void print_report(std::ostream& out, const AsymmetryReport& report,
                  std::span<const std::string> labels);

}  // namespace spinflip::cli
