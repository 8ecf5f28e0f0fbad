#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wamark/attacks.hpp"

namespace wamark {

// Evaluation grid: every (image, alpha, attack) cell runs embed -> attack ->
// extract and reports metrics. The run is fully determined by this struct.
struct SweepConfig {
  // Corpus entries are PGM paths, or "synth:<kind>:<size>:<seed>" for
  // generated covers.
  std::vector<std::string> corpus;
  std::vector<double> alphas = {1.5, 2.0, 2.5, 3.0, 3.5, 5.0};
  std::vector<AttackSpec> attacks;  // per-cell noise seeds are derived later
  std::size_t message_bits = 64;
  std::uint64_t key = 1;
  bool per_image_keys = true;  // key_policy: per-image (default) or fixed
  std::uint64_t noise_seed = 1;

  SweepConfig();
};

// The default attack battery: none, jpeg at 100/90/80/70, awgn at 2/3.5/5/10.
std::vector<AttackSpec> default_attacks();

// key=value config with '#' comments. Unknown keys are errors.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

Image load_corpus_entry(const std::string& entry);

// Runs the grid and streams the CSV report: one "cell" row per cell in
// deterministic (image, alpha, attack) order, then one "mean" row per
// (alpha, attack) aggregated over the corpus. Byte-stable across runs.
void run_sweep(const SweepConfig& config, std::ostream& csv_out);

}  // namespace wamark
