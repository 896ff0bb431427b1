// JSON and CSV external interfaces.

#ifndef QLAND_SERIALIZE_HPP
#define QLAND_SERIALIZE_HPP

#include <json.hpp>

#include <string>

#include "qland/homological.hpp"
#include "qland/kam.hpp"
#include "qland/oracle.hpp"

namespace qland {

using json = nlohmann::ordered_json;

json to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const json& j);

json to_json(const QuadHamiltonian& q);
QuadHamiltonian quadham_from_json(const json& j);

json to_json(const NormalForm& n);
NormalForm normalform_from_json(const json& j);

json to_json(const DivisorReport& rep);
json to_json(const KamResult& res, bool with_generators = false);

/// Fixed-format floating point for byte-stable CSV output.
std::string fmt_g(double v);

/// CSV header "omega,B0,c_omega,d_omega,a_omega,status"; resonant rows keep
/// empty value cells and status=resonant.
std::string constants_csv_row(const StepConstants& c);
extern const char* kConstantsCsvHeader;

/// Trajectory CSV "t,x1,x2,p1,p2,abs_z1,abs_z2" (|z| via the gauge chart).
std::string trajectory_csv(const Trajectory& traj, const GaugeSpec& spec);
extern const char* kTrajectoryCsvHeader;

}  // namespace qland

#endif
