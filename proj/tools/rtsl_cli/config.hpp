#pragma once

// Run configuration shared by every subcommand, and the metadata sidecar
// written next to each output file.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtsl/random.hpp"
#include "rtsl/rtsl.hpp"

namespace rtsl::cli {

struct RunConfig {
  std::string command;
  std::string dist = "2:0.5,3:0.5";

  std::uint64_t n = 100000;  // steps per Lyapunov sample
  std::uint64_t samples = 32;
  std::uint64_t size = 2000;  // truncation size
  std::uint64_t depth = 30;
  std::uint64_t bins = 64;

  double emin = -4.0;
  double emax = 4.0;
  std::uint64_t steps = 161;
  std::vector<double> energies;  // overrides the grid when non-empty
  double energy = 1.0;

  std::uint64_t seed = 42;
  double tol = 1e-8;
  double eps = 0.05;

  std::vector<double> window{0.9, 1.1};
  std::vector<std::uint64_t> runs{16, 64, 256, 1024};
  std::uint64_t run_start = 16;
  int dmax = 3;

  std::vector<int> branching;
  std::uint64_t block = 0;  // N
  std::uint64_t copy = 1;   // k
  std::optional<double> l_ref;
  std::uint64_t ref_n = 20000;
  std::uint64_t ref_samples = 8;

  int alpha = 3;
  int beta = 2;
  std::uint64_t power = 20;

  std::string in;
  std::string out;
  std::string x_column;
  std::string y_column;
  std::string err_column;
  bool timing = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["dist"] = c.dist;
  j["n"] = c.n;
  j["samples"] = c.samples;
  j["size"] = c.size;
  j["depth"] = c.depth;
  j["bins"] = c.bins;
  j["emin"] = c.emin;
  j["emax"] = c.emax;
  j["steps"] = c.steps;
  j["energies"] = c.energies;
  j["energy"] = c.energy;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["eps"] = c.eps;
  j["window"] = c.window;
  j["runs"] = c.runs;
  j["run_start"] = c.run_start;
  j["dmax"] = c.dmax;
  j["branching"] = c.branching;
  j["block"] = c.block;
  j["copy"] = c.copy;
  j["l_ref"] = c.l_ref ? nlohmann::ordered_json(*c.l_ref) : nlohmann::ordered_json(nullptr);
  j["ref_n"] = c.ref_n;
  j["ref_samples"] = c.ref_samples;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["power"] = c.power;
  j["in"] = c.in;
  j["out"] = c.out;
  j["x_column"] = c.x_column;
  j["y_column"] = c.y_column;
  j["err_column"] = c.err_column;
  j["timing"] = c.timing;
  return j;
}

inline RunConfig config_from_json(const nlohmann::ordered_json& j) {
  RunConfig c;
  j.at("command").get_to(c.command);
  j.at("dist").get_to(c.dist);
  j.at("n").get_to(c.n);
  j.at("samples").get_to(c.samples);
  j.at("size").get_to(c.size);
  j.at("depth").get_to(c.depth);
  j.at("bins").get_to(c.bins);
  j.at("emin").get_to(c.emin);
  j.at("emax").get_to(c.emax);
  j.at("steps").get_to(c.steps);
  j.at("energies").get_to(c.energies);
  j.at("energy").get_to(c.energy);
  j.at("seed").get_to(c.seed);
  j.at("tol").get_to(c.tol);
  j.at("eps").get_to(c.eps);
  j.at("window").get_to(c.window);
  j.at("runs").get_to(c.runs);
  j.at("run_start").get_to(c.run_start);
  j.at("dmax").get_to(c.dmax);
  j.at("branching").get_to(c.branching);
  j.at("block").get_to(c.block);
  j.at("copy").get_to(c.copy);
  if (!j.at("l_ref").is_null()) c.l_ref = j.at("l_ref").get<double>();
  j.at("ref_n").get_to(c.ref_n);
  j.at("ref_samples").get_to(c.ref_samples);
  j.at("alpha").get_to(c.alpha);
  j.at("beta").get_to(c.beta);
  j.at("power").get_to(c.power);
  j.at("in").get_to(c.in);
  j.at("out").get_to(c.out);
  j.at("x_column").get_to(c.x_column);
  j.at("y_column").get_to(c.y_column);
  j.at("err_column").get_to(c.err_column);
  j.at("timing").get_to(c.timing);
  return c;
}

/// Writes `<path>.meta.json`. Wall time is only recorded on request so that
/// repeated runs stay byte-identical.
inline void write_metadata(const std::string& path, const RunConfig& c,
                           std::optional<double> wall_seconds) {
  nlohmann::ordered_json j;
  j["config"] = to_json(c);
  j["version"] = kVersion;
  j["prng"] = std::string(kPrngId);
  if (wall_seconds) j["wall_time_s"] = *wall_seconds;
  std::ofstream f(path + ".meta.json", std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path + ".meta.json");
  f << j.dump(2) << '\n';
}

}  // namespace rtsl::cli
