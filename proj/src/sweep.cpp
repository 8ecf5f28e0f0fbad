#include "wamark/sweep.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wamark/keystream.hpp"
#include "wamark/metrics.hpp"
#include "wamark/pgm.hpp"
#include "wamark/synth.hpp"
#include "wamark/watermark.hpp"

namespace wamark {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  // Manual scan so leading, doubled and trailing separators all surface as
  // empty items instead of being silently dropped.
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    const std::string t = trim(s.substr(start, pos - start));
    if (t.empty()) throw DataError("malformed config: empty list item in '" + s + "'");
    out.push_back(t);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError(std::string("malformed config: bad ") + what + " '" + s + "'");
  }
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError(std::string("malformed config: bad ") + what + " '" + s + "'");
  }
}

AttackSpec parse_attack_entry(const std::string& s) {
  AttackSpec spec;
  const auto colon = s.find(':');
  const std::string name = trim(s.substr(0, colon));
  spec.kind = parse_attack_kind(name);
  if (colon == std::string::npos) {
    if (spec.kind != AttackKind::none) {
      throw DataError("malformed config: attack '" + name + "' needs a parameter");
    }
    return spec;
  }
  if (spec.kind == AttackKind::none) {
    throw DataError("malformed config: attack 'none' takes no parameter");
  }
  spec.param = parse_double(trim(s.substr(colon + 1)), "attack parameter");
  return spec;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_f(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_key(std::uint64_t key) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016" PRIX64, key);
  return buf;
}

std::string sanitize(const std::string& message) {
  std::string out = message;
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

struct Row {
  std::string row, image, alpha, attack, param, noise_seed, key, bits;
  std::string ber, mse, psnr, nc, error;
};

void emit(std::ostream& out, const Row& r) {
  out << r.row << ',' << r.image << ',' << r.alpha << ',' << r.attack << ',' << r.param << ','
      << r.noise_seed << ',' << r.key << ',' << r.bits << ',' << r.ber << ',' << r.mse << ','
      << r.psnr << ',' << r.nc << ',' << r.error << '\n';
}

}  // namespace

SweepConfig::SweepConfig() : attacks(default_attacks()) {}

std::vector<AttackSpec> default_attacks() {
  std::vector<AttackSpec> out;
  out.push_back({AttackKind::none, 0.0, 0});
  for (double q : {100.0, 90.0, 80.0, 70.0}) out.push_back({AttackKind::jpeg, q, 0});
  for (double s : {2.0, 3.5, 5.0, 10.0}) out.push_back({AttackKind::awgn, s, 0});
  return out;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  bool saw_corpus = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError("malformed config: line " + std::to_string(line_no) + " has no '='");
    }
    const std::string field = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (field == "corpus") {
      config.corpus = split_list(value, ',');
      saw_corpus = true;
    } else if (field == "alphas") {
      config.alphas.clear();
      for (const std::string& a : split_list(value, ',')) {
        config.alphas.push_back(parse_double(a, "alpha"));
      }
    } else if (field == "attacks") {
      config.attacks.clear();
      for (const std::string& a : split_list(value, ',')) {
        config.attacks.push_back(parse_attack_entry(a));
      }
    } else if (field == "message_bits") {
      config.message_bits = parse_uint64(value, "message_bits");
    } else if (field == "key") {
      config.key = parse_uint64(value, "key");
    } else if (field == "key_policy") {
      if (value == "per-image") {
        config.per_image_keys = true;
      } else if (value == "fixed") {
        config.per_image_keys = false;
      } else {
        throw DataError("malformed config: key_policy must be per-image or fixed, got '" + value +
                        "'");
      }
    } else if (field == "noise_seed") {
      config.noise_seed = parse_uint64(value, "noise_seed");
    } else {
      throw DataError("malformed config: unknown field '" + field + "'");
    }
  }
  if (!saw_corpus || config.corpus.empty()) throw DataError("missing field: corpus");
  if (config.message_bits == 0) throw DataError("malformed config: message_bits must be >= 1");
  if (config.alphas.empty()) throw DataError("malformed config: alphas must be non-empty");
  if (config.attacks.empty()) throw DataError("malformed config: attacks must be non-empty");
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file for reading: " + path);
  return parse_sweep_config(in);
}

Image load_corpus_entry(const std::string& entry) {
  if (entry.rfind("synth:", 0) == 0) {
    const std::vector<std::string> parts = split_list(entry, ':');
    if (parts.size() != 4) {
      throw DataError("malformed config: synth entry needs synth:<kind>:<size>:<seed>, got '" +
                      entry + "'");
    }
    const SynthKind kind = parse_synth_kind(parts[1]);
    const std::uint64_t size = parse_uint64(parts[2], "synth size");
    const std::uint64_t seed = parse_uint64(parts[3], "synth seed");
    if (size > 4096) throw DataError("dimension unsupported: synth size too large");
    return synth_image(kind, static_cast<int>(size), seed);
  }
  return read_pgm(entry);
}

void run_sweep(const SweepConfig& config, std::ostream& csv_out) {
  if (config.corpus.empty()) throw DataError("missing field: corpus");
  if (config.message_bits == 0) throw DataError("malformed config: message_bits must be >= 1");

  csv_out << "row,image,alpha,attack,param,noise_seed,key,bits,ber_percent,mse,psnr_db,nc,error\n";

  struct Agg {
    std::size_t count = 0;
    double sum_ber = 0.0, sum_mse = 0.0, sum_nc = 0.0;
  };
  std::vector<Agg> aggregates(config.alphas.size() * config.attacks.size());
  const std::string bits_text = std::to_string(config.message_bits);

  for (std::size_t img_idx = 0; img_idx < config.corpus.size(); ++img_idx) {
    const std::string& entry = config.corpus[img_idx];
    const std::uint64_t image_key =
        config.per_image_keys ? keyed_value(config.key, img_idx) : config.key;
    const std::uint64_t image_seed = keyed_value(config.noise_seed, img_idx);

    Row base;
    base.row = "cell";
    base.image = entry;
    base.key = fmt_key(image_key);
    base.bits = bits_text;

    auto emit_attack_row = [&](std::size_t alpha_idx, std::size_t attack_idx,
                               const std::string& error, const MetricsReport* metrics) {
      const AttackSpec& spec = config.attacks[attack_idx];
      Row r = base;
      r.alpha = fmt_g(config.alphas[alpha_idx]);
      r.attack = attack_kind_name(spec.kind);
      if (spec.kind != AttackKind::none) r.param = fmt_g(spec.param);
      if (spec.kind == AttackKind::awgn) {
        r.noise_seed = std::to_string(keyed_value(image_seed, attack_idx));
      }
      if (metrics != nullptr) {
        r.ber = fmt_f(metrics->ber_percent);
        r.mse = fmt_f(metrics->mse);
        r.psnr = fmt_f(metrics->psnr_db);
        r.nc = fmt_f(metrics->normalized_correlation);
        Agg& agg = aggregates[alpha_idx * config.attacks.size() + attack_idx];
        ++agg.count;
        agg.sum_ber += metrics->ber_percent;
        agg.sum_mse += metrics->mse;
        agg.sum_nc += metrics->normalized_correlation;
      } else {
        r.error = sanitize(error);
      }
      emit(csv_out, r);
    };

    Image cover;
    try {
      cover = load_corpus_entry(entry);
    } catch (const DataError& e) {
      for (std::size_t a = 0; a < config.alphas.size(); ++a) {
        for (std::size_t t = 0; t < config.attacks.size(); ++t) emit_attack_row(a, t, e.what(), nullptr);
      }
      continue;
    }

    const std::vector<std::uint8_t> bits = keyed_payload_bits(image_key, config.message_bits);
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      EmbedParams params;
      params.alpha = config.alphas[a];
      Image marked;
      try {
        marked = embed(cover, image_key, params, bits);
      } catch (const DataError& e) {
        for (std::size_t t = 0; t < config.attacks.size(); ++t) emit_attack_row(a, t, e.what(), nullptr);
        continue;
      }
      for (std::size_t t = 0; t < config.attacks.size(); ++t) {
        AttackSpec spec = config.attacks[t];
        spec.noise_seed = keyed_value(image_seed, t);
        try {
          const Image attacked = apply_attack(marked, spec);
          const std::vector<std::uint8_t> got =
              extract(attacked, image_key, params, bits.size());
          const MetricsReport metrics = compare(cover, attacked, bits, got);
          emit_attack_row(a, t, "", &metrics);
        } catch (const DataError& e) {
          emit_attack_row(a, t, e.what(), nullptr);
        }
      }
    }
  }

  for (std::size_t a = 0; a < config.alphas.size(); ++a) {
    for (std::size_t t = 0; t < config.attacks.size(); ++t) {
      const Agg& agg = aggregates[a * config.attacks.size() + t];
      const AttackSpec& spec = config.attacks[t];
      Row r;
      r.row = "mean";
      r.alpha = fmt_g(config.alphas[a]);
      r.attack = attack_kind_name(spec.kind);
      if (spec.kind != AttackKind::none) r.param = fmt_g(spec.param);
      r.bits = bits_text;
      if (agg.count > 0) {
        const double n = static_cast<double>(agg.count);
        const double mean_mse = agg.sum_mse / n;
        r.ber = fmt_f(agg.sum_ber / n);
        r.mse = fmt_f(mean_mse);
        r.psnr = fmt_f(psnr_db(mean_mse));
        r.nc = fmt_f(agg.sum_nc / n);
      } else {
        r.error = "no valid cells";
      }
      emit(csv_out, r);
    }
  }
}

}  // namespace wamark
