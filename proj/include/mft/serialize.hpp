#ifndef MFT_SERIALIZE_HPP_
#define MFT_SERIALIZE_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "mft/design.hpp"
#include "mft/equilibrium_het.hpp"
#include "mft/equilibrium_hom.hpp"
#include "mft/nplayer_sim.hpp"
#include "mft/pie.hpp"

namespace mft {

using json = nlohmann::ordered_json;

json to_json(const ModelParams& p);
json to_json(const RankReward& reward);
json to_json(const HomEquilibrium& eq);
json to_json(const HetEquilibrium& eq);
json to_json(const DesignSolution& sol);
json to_json(const PieEquilibriumSet& set);
json to_json(const SimReport& report);

ModelParams model_params_from_json(const json& j);
RankReward reward_from_json(const json& j);
PopulationMix mix_from_json(const json& j);

// Writes via a temp file + rename so failures never leave partial output.
void write_file(const std::string& path, const std::string& content);

// CSV with a header row, '.' decimal separator, LF line endings.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

// Deterministic shortest-roundtrip float formatting used everywhere.
std::string format_double(double v);

}  // namespace mft

#endif  // MFT_SERIALIZE_HPP_
