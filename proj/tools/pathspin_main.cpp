// Copyright 2026 The pathspin Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// pathspin: command-line front end for the path-spin state-transfer
// simulator. Subcommands: enumerate | simulate | sweep | verify | eve.
//
// Exit codes: 0 success, 1 verification or internal failure, 2 usage error,
// 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathspin/analysis.hpp"

using nlohmann::json;
using namespace pathspin;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3 };

// ---------------------------------------------------------------------------
// Formatting helpers

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_field(fields[i]);
  }
  return row + "\n";
}

std::string fmt_amp(const Complex& z) {
  char buf[80];
  if (std::abs(z.imag()) < 1e-12) {
    std::snprintf(buf, sizeof(buf), "%.6f", z.real());
  } else {
    std::snprintf(buf, sizeof(buf), "(%.6f%+.6fi)", z.real(), z.imag());
  }
  return buf;
}

std::string fmt_qubit(const std::array<Complex, 2>& q) {
  return fmt_amp(q[0]) + "|0> + " + fmt_amp(q[1]) + "|1>";
}

const char* path_name(int bit) { return bit == 0 ? "a" : "b"; }
const char* xspin_name(int bit) { return bit == 0 ? "0x" : "1x"; }

json config_json(const ProtocolConfig& cfg) {
  return json{{"alpha", cfg.alpha},   {"beta", cfg.beta()},
              {"gamma", cfg.gamma},   {"delta", cfg.delta()},
              {"phase", cfg.input_phase}, {"seed", cfg.seed}};
}

json branch_json(const BranchRecord& br) {
  json out = {br.output_state[0].real(), br.output_state[0].imag(),
              br.output_state[1].real(), br.output_state[1].imag()};
  json j{{"m2", br.m2},
         {"ma", br.ma},
         {"path", br.bob.path_bit},
         {"spin", br.bob.spin_bit},
         {"probability", br.probability},
         {"correction", to_string(br.correction)},
         {"output", out}};
  if (br.fidelity)
    j["fidelity"] = *br.fidelity;
  else
    j["fidelity"] = nullptr;
  return j;
}

json message_json(const ClassicalMessage& msg) {
  json j;
  switch (msg.kind) {
    case MessageKind::ReceiptConfirm: j["kind"] = "receipt_confirm"; break;
    case MessageKind::LossReport: j["kind"] = "loss_report"; break;
    case MessageKind::AliceOutcomes: j["kind"] = "alice_outcomes"; break;
  }
  if (msg.m2) j["m2"] = *msg.m2;
  if (msg.ma) j["ma"] = *msg.ma;
  return j;
}

json transcript_json(const std::vector<TranscriptEvent>& events) {
  json arr = json::array();
  for (const TranscriptEvent& e : events) {
    json j{{"phase", to_string(e.phase)}};
    if (e.message) j["message"] = message_json(*e.message);
    if (!e.note.empty()) j["note"] = e.note;
    arr.push_back(j);
  }
  return arr;
}

// The formula is only defined for real inputs; null otherwise.
json formula_or_null(const ProtocolConfig& cfg) {
  if (cfg.input_phase != 0.0) return nullptr;
  return average_fidelity_formula(cfg);
}

// ---------------------------------------------------------------------------
// JSON config file: keys mirror flag names, command-line flags win. Keys
// that do not name a flag of the invoked subcommand are ignored, so one
// config file can serve several subcommands.

int merge_config_file(const CLI::App& app, std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return kOk;

  const CLI::App* sub = nullptr;
  for (const std::string& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    for (const CLI::App* candidate : app.get_subcommands(nullptr))
      if (candidate->get_name() == a) sub = candidate;
    break;
  }
  if (sub == nullptr) return kOk;  // no subcommand named; parse will complain

  std::ifstream in(path);
  if (!in) {
    std::cerr << "pathspin: cannot open config file: " << path << "\n";
    return kIo;
  }
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    std::cerr << "pathspin: invalid JSON in " << path << ": " << e.what()
              << "\n";
    return kUsage;
  }
  if (!cfg.is_object()) {
    std::cerr << "pathspin: config file must hold a JSON object\n";
    return kUsage;
  }
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr) continue;
    bool given = false;
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;  // explicit flags win
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else {
      args.push_back(flag);
      args.push_back(value.dump());
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonFlags {
  ProtocolConfig config;
  std::string format = "table";
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_input = true) {
  cmd->add_option("--alpha", flags.config.alpha,
                  "Beam-splitter reflection amplitude (beta is derived)")
      ->check(CLI::Range(0.0, 1.0));
  if (with_input) {
    cmd->add_option("--gamma", flags.config.gamma,
                    "Input |0> amplitude (delta is derived)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--phase", flags.config.input_phase,
                    "Optional phase on delta, radians");
  }
  cmd->add_option("--seed", flags.config.seed, "RNG seed");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--config", flags.config_path,
                  "JSON config file; keys mirror flag names, flags win");
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const CommonFlags& flags) {
  const ProtocolConfig& cfg = flags.config;
  const std::vector<BranchRecord> branches = enumerate_branches(cfg);
  double weighted = 0.0;
  for (const BranchRecord& br : branches)
    if (br.fidelity) weighted += br.probability * *br.fidelity;

  if (flags.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"config", config_json(cfg)},
           {"branches", json::array()},
           {"summary",
            {{"f_avg_formula", formula_or_null(cfg)},
             {"f_avg_enumerated", weighted}}}};
    for (const BranchRecord& br : branches) j["branches"].push_back(branch_json(br));
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  if (flags.format == "csv") {
    std::cout << csv_row({"m2", "ma", "bob_path", "bob_spin", "probability",
                          "correction", "out_amp0_re", "out_amp0_im",
                          "out_amp1_re", "out_amp1_im", "fidelity"});
    for (const BranchRecord& br : branches) {
      std::cout << csv_row(
          {std::to_string(br.m2), std::to_string(br.ma),
           std::to_string(br.bob.path_bit), std::to_string(br.bob.spin_bit),
           fmt_double(br.probability), to_string(br.correction),
           fmt_double(br.output_state[0].real()),
           fmt_double(br.output_state[0].imag()),
           fmt_double(br.output_state[1].real()),
           fmt_double(br.output_state[1].imag()),
           br.fidelity ? fmt_double(*br.fidelity) : "nan"});
    }
    return kOk;
  }

  std::printf("branches for alpha=%g gamma=%g phase=%g\n", cfg.alpha, cfg.gamma,
              cfg.input_phase);
  std::printf("%3s %3s %5s %5s  %-12s %-8s %-42s %s\n", "m2", "ma", "path",
              "spin", "probability", "unitary", "final state", "fidelity");
  for (const BranchRecord& br : branches) {
    std::printf("%3d %3d %5s %5s  %-12.8f %-8s %-42s %s\n", br.m2, br.ma,
                path_name(br.bob.path_bit), xspin_name(br.bob.spin_bit),
                br.probability, to_string(br.correction).c_str(),
                br.fidelity ? fmt_qubit(br.output_state).c_str() : "-",
                br.fidelity ? fmt_double(*br.fidelity).c_str() : "-");
  }
  std::printf("weighted average fidelity: %s", fmt_double(weighted).c_str());
  if (cfg.input_phase == 0.0)
    std::printf("   closed form: %s",
                fmt_double(average_fidelity_formula(cfg)).c_str());
  std::printf("\n");
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const CommonFlags& flags, std::size_t runs, bool aggregate,
                 bool with_transcript) {
  const ProtocolConfig& cfg = flags.config;
  const std::vector<RunRecord> records = run_sampled(cfg, runs);

  if (aggregate) {
    std::array<std::size_t, 16> counts{};
    double fidelity_sum = 0.0;
    for (const RunRecord& r : records) {
      counts[(r.m2 << 3) | (r.ma << 2) | (r.bob.path_bit << 1) |
             r.bob.spin_bit]++;
      fidelity_sum += r.fidelity;
    }
    const double mean_fidelity = fidelity_sum / static_cast<double>(runs);
    const std::vector<BranchRecord> branches = enumerate_branches(cfg);
    double enumerated_avg = 0.0;
    for (const BranchRecord& br : branches)
      if (br.fidelity) enumerated_avg += br.probability * *br.fidelity;

    auto count_of = [&](const BranchRecord& br) {
      return counts[(br.m2 << 3) | (br.ma << 2) | (br.bob.path_bit << 1) |
                    br.bob.spin_bit];
    };

    if (flags.format == "json") {
      json j{{"schema_version", kSchemaVersion},
             {"config", config_json(cfg)},
             {"n_runs", runs},
             {"branches", json::array()},
             {"summary",
              {{"mean_fidelity", mean_fidelity},
               {"f_avg_enumerated", enumerated_avg},
               {"f_avg_formula", formula_or_null(cfg)}}}};
      for (const BranchRecord& br : branches) {
        const double freq = static_cast<double>(count_of(br)) /
                            static_cast<double>(runs);
        j["branches"].push_back(json{{"m2", br.m2},
                                     {"ma", br.ma},
                                     {"path", br.bob.path_bit},
                                     {"spin", br.bob.spin_bit},
                                     {"count", count_of(br)},
                                     {"frequency", freq},
                                     {"probability", br.probability}});
      }
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (flags.format == "csv") {
      std::cout << csv_row({"m2", "ma", "bob_path", "bob_spin", "count",
                            "frequency", "probability"});
      for (const BranchRecord& br : branches) {
        const double freq = static_cast<double>(count_of(br)) /
                            static_cast<double>(runs);
        std::cout << csv_row({std::to_string(br.m2), std::to_string(br.ma),
                              std::to_string(br.bob.path_bit),
                              std::to_string(br.bob.spin_bit),
                              std::to_string(count_of(br)), fmt_double(freq),
                              fmt_double(br.probability)});
      }
      return kOk;
    }
    std::printf("aggregated over %zu runs (seed %llu)\n", runs,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("%3s %3s %5s %5s %9s %11s %13s\n", "m2", "ma", "path", "spin",
                "count", "frequency", "probability");
    for (const BranchRecord& br : branches)
      std::printf("%3d %3d %5s %5s %9zu %11.6f %13.8f\n", br.m2, br.ma,
                  path_name(br.bob.path_bit), xspin_name(br.bob.spin_bit),
                  count_of(br),
                  static_cast<double>(count_of(br)) / static_cast<double>(runs),
                  br.probability);
    std::printf("mean fidelity: %s   enumerated average: %s\n",
                fmt_double(mean_fidelity).c_str(),
                fmt_double(enumerated_avg).c_str());
    return kOk;
  }

  if (flags.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"config", config_json(cfg)},
           {"runs", json::array()}};
    for (const RunRecord& r : records) {
      json run{{"run", r.run_index},
               {"m2", r.m2},
               {"ma", r.ma},
               {"path", r.bob.path_bit},
               {"spin", r.bob.spin_bit},
               {"correction", to_string(r.correction)},
               {"output",
                {r.output_state[0].real(), r.output_state[0].imag(),
                 r.output_state[1].real(), r.output_state[1].imag()}},
               {"fidelity", r.fidelity}};
      if (with_transcript) {
        // Re-run deterministically to reproduce this record's transcript.
        Rng rng = Rng::for_run(cfg.seed, r.run_index);
        ProtocolRun replay(cfg);
        replay.prepare();
        replay.transmit(false, false);
        replay.alice_measure(rng);
        replay.bob_receive_and_process();
        replay.bob_measure(rng);
        replay.apply_correction();
        run["transcript"] = transcript_json(replay.transcript());
      }
      j["runs"].push_back(run);
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  if (flags.format == "csv") {
    std::cout << csv_row({"run", "m2", "ma", "bob_path", "bob_spin",
                          "correction", "out_amp0_re", "out_amp0_im",
                          "out_amp1_re", "out_amp1_im", "fidelity"});
    for (const RunRecord& r : records)
      std::cout << csv_row(
          {std::to_string(r.run_index), std::to_string(r.m2),
           std::to_string(r.ma), std::to_string(r.bob.path_bit),
           std::to_string(r.bob.spin_bit), to_string(r.correction),
           fmt_double(r.output_state[0].real()),
           fmt_double(r.output_state[0].imag()),
           fmt_double(r.output_state[1].real()),
           fmt_double(r.output_state[1].imag()), fmt_double(r.fidelity)});
    return kOk;
  }

  std::printf("%7s %3s %3s %5s %5s %8s %-42s %s\n", "run", "m2", "ma", "path",
              "spin", "unitary", "output state", "fidelity");
  for (const RunRecord& r : records)
    std::printf("%7llu %3d %3d %5s %5s %8s %-42s %.10f\n",
                static_cast<unsigned long long>(r.run_index), r.m2, r.ma,
                path_name(r.bob.path_bit), xspin_name(r.bob.spin_bit),
                to_string(r.correction).c_str(),
                fmt_qubit(r.output_state).c_str(), r.fidelity);
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const CommonFlags& flags, int alpha_steps, int gamma_steps,
              std::vector<double> alphas, std::vector<double> gammas,
              const std::string& out_path, bool validate) {
  if (alphas.empty()) {
    alphas.resize(alpha_steps);
    for (int i = 0; i < alpha_steps; ++i)
      alphas[i] = static_cast<double>(i) / (alpha_steps - 1);
  }
  if (gammas.empty()) {
    gammas.resize(gamma_steps);
    for (int j = 0; j < gamma_steps; ++j)
      gammas[j] = static_cast<double>(j) / (gamma_steps - 1);
  }
  const SweepGrid grid = sweep(alphas, gammas, validate);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "pathspin: cannot open output file: " << out_path << "\n";
      return kIo;
    }
    out = &file;
  }

  if (flags.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"alphas", grid.alphas},
           {"gammas", grid.gammas},
           {"values", grid.values}};
    *out << j.dump(2) << "\n";
  } else {
    *out << csv_row({"alpha", "gamma", "f_avg"});
    for (std::size_t i = 0; i < grid.alphas.size(); ++i)
      for (std::size_t j = 0; j < grid.gammas.size(); ++j)
        *out << csv_row({fmt_double(grid.alphas[i]), fmt_double(grid.gammas[j]),
                         fmt_double(grid.values[i][j])});
  }
  if (!out_path.empty() && !file.good()) {
    std::cerr << "pathspin: write failed: " << out_path << "\n";
    return kIo;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct ReferenceCorrection {
  // Tables II-V keyed as [m2][ma][path][spin].
  Pauli table[2][2][2][2] = {
      {{{Pauli::I, Pauli::Z}, {Pauli::Z, Pauli::I}},
       {{Pauli::Z, Pauli::I}, {Pauli::I, Pauli::Z}}},
      {{{Pauli::X, Pauli::Y}, {Pauli::Y, Pauli::X}},
       {{Pauli::Y, Pauli::X}, {Pauli::X, Pauli::Y}}}};
};

std::array<Complex, 2> target_state(int m2, const ProtocolConfig& cfg) {
  const double a = cfg.alpha, b = cfg.beta(), g = cfg.gamma, d = cfg.delta();
  const Complex c0 = m2 == 0 ? a * g : b * g;
  const Complex c1 = m2 == 0 ? b * d : a * d;
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  return {c0 / norm, c1 / norm};
}

int cmd_verify(double tolerance, int grid_steps, const std::string& corrupt,
               const CommonFlags& flags) {
  ReferenceCorrection reference;
  if (!corrupt.empty()) {
    // Test fixture: damage one reference entry to exercise failure
    // reporting.
    int m2, ma, path, spin;
    if (std::sscanf(corrupt.c_str(), "%d,%d,%d,%d", &m2, &ma, &path, &spin) !=
            4 ||
        ((m2 | ma | path | spin) & ~1)) {
      std::cerr << "pathspin: --corrupt-correction expects m2,ma,path,spin "
                   "bits\n";
      return kUsage;
    }
    Pauli& entry = reference.table[m2][ma][path][spin];
    entry = static_cast<Pauli>((static_cast<int>(entry) + 1) % 4);
  }

  auto fail = [](const std::string& what) {
    std::cout << "FAIL " << what << "\n";
    std::cout << "verification failed\n";
    return kFailure;
  };

  // Closed form vs the literal table data.
  for (int m2 = 0; m2 < 2; ++m2)
    for (int ma = 0; ma < 2; ++ma)
      for (int path = 0; path < 2; ++path)
        for (int spin = 0; spin < 2; ++spin)
          if (correction_for(m2, ma, BobOutcome{path, spin}) !=
              reference.table[m2][ma][path][spin])
            return fail("correction table entry (m2=" + std::to_string(m2) +
                        ", ma=" + std::to_string(ma) + ", path=" +
                        path_name(path) + ", spin=" + xspin_name(spin) +
                        "): closed form disagrees with table");

  int points = 0;
  for (int i = 0; i < grid_steps; ++i) {
    for (int j = 0; j < grid_steps; ++j) {
      ProtocolConfig cfg;
      cfg.alpha = static_cast<double>(i) / (grid_steps - 1);
      cfg.gamma = static_cast<double>(j) / (grid_steps - 1);
      const double a = cfg.alpha, b = cfg.beta(), g = cfg.gamma,
                   d = cfg.delta();
      const std::string where =
          "at alpha=" + fmt_double(a) + " gamma=" + fmt_double(g) + " ";

      const std::vector<BranchRecord> branches = enumerate_branches(cfg);
      double total = 0.0, weighted = 0.0;
      for (const BranchRecord& br : branches) {
        const std::string branch_name =
            "branch (m2=" + std::to_string(br.m2) + ", ma=" +
            std::to_string(br.ma) + ", path=" + path_name(br.bob.path_bit) +
            ", spin=" + xspin_name(br.bob.spin_bit) + ")";
        total += br.probability;

        const double row = br.m2 == 0 ? (a * a * g * g + b * b * d * d)
                                      : (a * a * d * d + b * b * g * g);
        if (std::abs(br.probability - row / 8.0) > tolerance)
          return fail(where + branch_name + ": probability " +
                      fmt_double(br.probability) + " != " +
                      fmt_double(row / 8.0));

        if (br.correction != reference.table[br.m2][br.ma][br.bob.path_bit]
                                            [br.bob.spin_bit])
          return fail(where + branch_name + ": correction " +
                      to_string(br.correction) + " != reference " +
                      to_string(reference.table[br.m2][br.ma][br.bob.path_bit]
                                               [br.bob.spin_bit]));

        if (!br.fidelity) continue;  // zero-probability branch
        weighted += br.probability * *br.fidelity;

        const auto target = phase_canonical(target_state(br.m2, cfg));
        const auto got = phase_canonical(br.output_state);
        if (std::abs(got[0] - target[0]) > tolerance ||
            std::abs(got[1] - target[1]) > tolerance)
          return fail(where + branch_name + ": corrected state " +
                      fmt_qubit(got) + " != target " + fmt_qubit(target));

        if (std::abs(*br.fidelity - fidelity_case(br.m2, cfg)) > tolerance)
          return fail(where + branch_name + ": fidelity " +
                      fmt_double(*br.fidelity) + " != closed form " +
                      fmt_double(fidelity_case(br.m2, cfg)));
      }
      if (std::abs(total - 1.0) > tolerance)
        return fail(where + ": branch probabilities sum to " +
                    fmt_double(total));
      if (std::abs(weighted - average_fidelity_formula(cfg)) > tolerance)
        return fail(where + ": enumerated average fidelity " +
                    fmt_double(weighted) + " != formula " +
                    fmt_double(average_fidelity_formula(cfg)));
      ++points;
    }
  }

  if (flags.format == "json") {
    json j{{"schema_version", kSchemaVersion},
           {"passed", true},
           {"grid_points", points},
           {"branches_per_point", 16},
           {"tolerance", tolerance}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "16 branches x " << points << " grid points verified "
              << "(tolerance " << fmt_double(tolerance) << ")\n";
    std::cout << "all correction-table entries match the closed form\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// eve

int cmd_eve(const CommonFlags& flags) {
  const ProtocolConfig& cfg = flags.config;
  const EveReport report = eve_information(cfg);
  const double leak = premature_measurement_leak(cfg);

  if (flags.format == "json") {
    json rho = json::array();
    for (std::size_t r = 0; r < report.rho_eve.dim(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < report.rho_eve.dim(); ++c)
        row.push_back({report.rho_eve.at(r, c).real(),
                       report.rho_eve.at(r, c).imag()});
      rho.push_back(row);
    }
    json j{{"schema_version", kSchemaVersion},
           {"config", config_json(cfg)},
           {"rho_eve", rho},
           {"input_independence", report.input_independence},
           {"premature_leak", leak}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  if (flags.format == "csv") {
    std::cout << csv_row({"quantity", "row", "col", "value_re", "value_im"});
    for (std::size_t r = 0; r < report.rho_eve.dim(); ++r)
      for (std::size_t c = 0; c < report.rho_eve.dim(); ++c)
        std::cout << csv_row({"rho_eve", std::to_string(r), std::to_string(c),
                              fmt_double(report.rho_eve.at(r, c).real()),
                              fmt_double(report.rho_eve.at(r, c).imag())});
    std::cout << csv_row({"input_independence", "", "",
                          fmt_double(report.input_independence), "0"});
    std::cout << csv_row({"premature_leak", "", "", fmt_double(leak), "0"});
    return kOk;
  }

  std::printf("Eve's reduced (path x spin) state at alpha=%g:\n", cfg.alpha);
  std::printf("  basis order |path spin>: 00, 01, 10, 11\n");
  for (std::size_t r = 0; r < report.rho_eve.dim(); ++r) {
    std::printf(" ");
    for (std::size_t c = 0; c < report.rho_eve.dim(); ++c)
      std::printf(" %-22s", fmt_amp(report.rho_eve.at(r, c)).c_str());
    std::printf("\n");
  }
  std::printf("input independence (max entrywise spread over probe inputs): %s\n",
              fmt_double(report.input_independence).c_str());
  std::printf("premature-measurement leak distance: %s\n",
              fmt_double(leak).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"Simulator and analysis toolkit for single-particle path-spin "
               "hybrid-entanglement state transfer"};
  app.set_version_flag("--version", std::string("pathspin ") + kVersion);
  app.require_subcommand(1);

  CommonFlags enum_flags;
  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "Exhaustively list all 16 measurement branches");
  add_common(enumerate_cmd, enum_flags);

  CommonFlags sim_flags;
  std::size_t runs = 1000;
  bool aggregate = false;
  bool with_transcript = false;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo sampling of full protocol runs");
  add_common(simulate_cmd, sim_flags);
  simulate_cmd->add_option("--runs", runs, "Number of sampled runs")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--aggregate", aggregate,
                         "Report branch frequencies instead of per-run rows");
  simulate_cmd->add_flag("--transcript", with_transcript,
                         "Include per-run transcripts (json format only)");

  CommonFlags sweep_flags;
  sweep_flags.format = "csv";
  int alpha_steps = 21, gamma_steps = 21;
  std::string out_path;
  bool validate = false;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Average-fidelity surface over an (alpha, gamma) grid");
  add_common(sweep_cmd, sweep_flags, /*with_input=*/false);
  std::vector<double> sweep_alphas, sweep_gammas;
  sweep_cmd->add_option("--alpha-steps", alpha_steps, "Grid steps in alpha")
      ->check(CLI::Range(2, 100000));
  sweep_cmd->add_option("--gamma-steps", gamma_steps, "Grid steps in gamma")
      ->check(CLI::Range(2, 100000));
  sweep_cmd
      ->add_option("--alphas", sweep_alphas,
                   "Explicit alpha values (overrides --alpha-steps)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd
      ->add_option("--gammas", sweep_gammas,
                   "Explicit gamma values (overrides --gamma-steps)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");
  sweep_cmd->add_flag("--validate", validate,
                      "Cross-check each grid entry against enumeration");

  CommonFlags verify_flags;
  double tolerance = 1e-10;
  int grid_steps = 21;
  std::string corrupt;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check tables, probabilities, corrections and fidelity "
                "formulas against the simulator on a built-in grid");
  add_common(verify_cmd, verify_flags, /*with_input=*/false);
  verify_cmd->add_option("--tolerance", tolerance, "Comparison tolerance")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--grid-steps", grid_steps, "Grid steps per axis")
      ->check(CLI::Range(2, 1000));
  verify_cmd->add_option("--corrupt-correction", corrupt,
                         "Fault-injection fixture: m2,ma,path,spin")
      ->group("");  // hidden

  CommonFlags eve_flags;
  CLI::App* eve_cmd = app.add_subcommand(
      "eve", "Interception analysis: Eve's state and input independence");
  add_common(eve_cmd, eve_flags);

  const int merge_rc = merge_config_file(app, args);
  if (merge_rc != kOk) return merge_rc;

  try {
    std::reverse(args.begin(), args.end());  // CLI11 expects reversed args
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "pathspin: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (enumerate_cmd->parsed()) return cmd_enumerate(enum_flags);
    if (simulate_cmd->parsed())
      return cmd_simulate(sim_flags, runs, aggregate, with_transcript);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_flags, alpha_steps, gamma_steps, sweep_alphas,
                       sweep_gammas, out_path, validate);
    if (verify_cmd->parsed())
      return cmd_verify(tolerance, grid_steps, corrupt, verify_flags);
    if (eve_cmd->parsed()) return cmd_eve(eve_flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "pathspin: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pathspin: internal failure: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
