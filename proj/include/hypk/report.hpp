#pragma once

#include <string>
#include <vector>

#include "hypk/curves.hpp"
#include "hypk/deform.hpp"
#include "hypk/estimator.hpp"

namespace hypk {

// Report serializers. Output depends only on the values, so equal inputs give
// byte-identical files. Reals in CSV carry 17 significant digits.
std::string k_estimate_json(const KEstimate& k, const std::vector<std::string>& names);
std::string k_estimate_csv(const KEstimate& k, const std::vector<std::string>& names);
std::string prediction_json(const AsympPrediction& p, const std::vector<std::string>& names);
std::string witness_json(const SurgeryWitness& w, const std::vector<std::string>& names);
std::string basis_json(const HomologyBasis& b, const std::vector<std::string>& names);
std::string deformation_json(const DeformationReport& r, const std::vector<std::string>& names);
std::string table_csv(const CurveTable& t, const std::vector<std::string>& names);
std::string table_json(const CurveTable& t, const std::vector<std::string>& names);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string twist_orbit_csv(const TwistOrbit& o);

std::string format_real(double v);

}  // namespace hypk
