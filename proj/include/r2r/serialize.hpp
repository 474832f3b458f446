#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "r2r/delay_chain.hpp"
#include "r2r/simulate.hpp"
#include "r2r/stability.hpp"
#include "r2r/sweep.hpp"

namespace r2r {

using Json = nlohmann::json;

/// {"tau_p", "P", "pi", "e_tau", "dist"} plus "mix", "empirical" and
/// "empty_rows" when they apply.
Json chain_to_json(const DelayChain& chain);
Json chain_to_json(const EmpiricalChain& chain);
/// Rebuilds the chain from "P" (pi and e_tau are recomputed) and restores
/// the provenance fields.
DelayChain chain_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);

/// Header xi,omega,verdict; omega in the outer loop.
void write_region_csv(std::ostream& out, const RegionGrid& grid);
RegionGrid read_region_csv(std::istream& in);

/// Columns t,tau,x0,norm,y,u. tau is the delay applied at step t; y and u
/// are blank when the gains are unknown.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace r2r
