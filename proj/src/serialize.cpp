#include "r2r/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace r2r {

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ContractViolation("chain JSON: P must be a non-empty array");
  const size_t n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw ContractViolation("chain JSON: P must be square");
    for (size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  }
  return m;
}

Json dist_to_json(const DelayChain& chain) {
  if (chain.dist) {
    const DelayDistribution& d = *chain.dist;
    Json out;
    out["source"] = d.source == DistSource::poisson ? "poisson" : "explicit";
    if (d.source == DistSource::poisson) out["lambda"] = d.lambda;
    out["p_nm"] = d.p_nm;
    out["etas"] = d.etas;
    if (d.tail_warning) out["tail_warning"] = true;
    return out;
  }
  if (chain.sampling_d) return Json{{"source", "sampling"}, {"d", *chain.sampling_d}};
  return nullptr;
}

}  // namespace

Json chain_to_json(const DelayChain& chain) {
  Json j;
  j["tau_p"] = chain.tau_p;
  j["P"] = matrix_to_json(chain.P);
  j["pi"] = std::vector<double>(chain.pi.data(), chain.pi.data() + chain.pi.size());
  j["e_tau"] = chain.e_tau;
  j["dist"] = dist_to_json(chain);
  if (chain.mix_q) j["mix"] = Json{{"q", *chain.mix_q}};
  if (chain.empirical) j["empirical"] = true;
  if (chain.renorm_warning) j["renorm_warning"] = true;
  return j;
}

Json chain_to_json(const EmpiricalChain& chain) {
  Json j = chain_to_json(chain.to_chain());
  std::vector<int> empty;
  for (size_t i = 0; i < chain.empty_rows.size(); ++i) {
    if (chain.empty_rows[i]) empty.push_back(static_cast<int>(i));
  }
  j["empty_rows"] = empty;
  j["transitions"] = chain.transitions;
  return j;
}

DelayChain chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("P")) throw ContractViolation("chain JSON: missing \"P\"");
  DelayChain chain = chain_from_matrix(matrix_from_json(j["P"]));
  if (j.contains("tau_p") && j["tau_p"].get<int>() != chain.tau_p) {
    throw ContractViolation("chain JSON: tau_p does not match P");
  }
  if (j.contains("dist") && j["dist"].is_object()) {
    const Json& d = j["dist"];
    const std::string source = d.value("source", "explicit");
    if (source == "sampling") {
      chain.sampling_d = d.at("d").get<int>();
    } else {
      DelayDistribution dist;
      dist.source = source == "poisson" ? DistSource::poisson : DistSource::explicit_list;
      dist.lambda = d.value("lambda", 0.0);
      dist.p_nm = d.value("p_nm", 0.0);
      dist.etas = d.value("etas", std::vector<double>{});
      dist.tail_warning = d.value("tail_warning", false);
      chain.dist = dist;
    }
  }
  if (j.contains("mix")) chain.mix_q = j["mix"].at("q").get<double>();
  chain.empirical = j.value("empirical", false);
  chain.renorm_warning = j.value("renorm_warning", false);
  return chain;
}

Json certificate_to_json(const Certificate& cert) {
  Json blocks = Json::array();
  for (const Matrix& q : cert.Q) blocks.push_back(matrix_to_json(q));
  return Json{{"Q", std::move(blocks)}, {"residual", cert.residual}};
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Status parse_status(const std::string& s) {
  if (s == "stable") return Status::stable;
  if (s == "unstable") return Status::unstable;
  if (s == "marginal") return Status::marginal;
  throw ContractViolation("region CSV: unknown verdict \"" + s + "\"");
}

}  // namespace

void write_region_csv(std::ostream& out, const RegionGrid& grid) {
  grid.validate();
  out << "xi,omega,verdict\n";
  for (size_t o = 0; o < grid.omega_axis.size(); ++o) {
    const std::string omega = format_number(grid.omega_axis[o]);
    for (size_t x = 0; x < grid.xi_axis.size(); ++x) {
      out << format_number(grid.xi_axis[x]) << ',' << omega << ',' << to_string(grid.at(x, o)) << '\n';
    }
  }
}

RegionGrid read_region_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "xi,omega,verdict") {
    throw ContractViolation("region CSV: expected header xi,omega,verdict");
  }
  std::vector<double> xis, omegas;
  std::vector<Status> cells;
  std::map<double, size_t> xi_seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string xs, os, vs;
    if (!std::getline(row, xs, ',') || !std::getline(row, os, ',') || !std::getline(row, vs)) {
      throw ContractViolation("region CSV: malformed row \"" + line + "\"");
    }
    double xi = 0.0, omega = 0.0;
    try {
      xi = std::stod(xs);
      omega = std::stod(os);
    } catch (const std::exception&) {
      throw ContractViolation("region CSV: bad number in row \"" + line + "\"");
    }
    if (omegas.empty() || omegas.back() != omega) omegas.push_back(omega);
    if (omegas.size() == 1 && !xi_seen.count(xi)) {
      xi_seen.emplace(xi, xis.size());
      xis.push_back(xi);
    }
    const size_t k = cells.size();
    if (xis.empty() || xis[k % xis.size()] != xi || k / xis.size() + 1 != omegas.size()) {
      throw ContractViolation("region CSV: rows are not a complete omega-major grid");
    }
    cells.push_back(parse_status(vs));
  }
  RegionGrid grid{std::move(xis), std::move(omegas), std::move(cells)};
  grid.validate();
  return grid;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,tau,x0,norm,y,u\n";
  const bool signals = !traj.outputs.empty();
  for (size_t t = 0; t < traj.states.size(); ++t) {
    out << t << ',';
    if (t < traj.taus.size()) out << traj.taus[t];
    out << ',' << format_number(traj.states[t](0)) << ',' << format_number(traj.states[t].norm()) << ',';
    if (signals) out << format_number(traj.outputs[t]) << ',' << format_number(traj.inputs[t]);
    else out << ',';
    out << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace r2r
