#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wamark/attacks.hpp"
#include "wamark/errors.hpp"
#include "wamark/metrics.hpp"
#include "wamark/pgm.hpp"
#include "wamark/sweep.hpp"
#include "wamark/synth.hpp"
#include "wamark/watermark.hpp"
#include "wamark/wave_atom.hpp"

namespace {

using namespace wamark;

std::uint64_t parse_key(const std::string& text) {
  try {
    std::size_t pos = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad key '" + text + "': expected decimal or 0x-hex");
  }
}

std::string fmt6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

struct EmbedArgs {
  std::string in, out, key_text = "1", message;
  double alpha = 2.0;
  std::uint64_t random_bits = 0;
  bool has_message = false, has_random = false;
};

int run_embed(const EmbedArgs& args) {
  if (args.has_message == args.has_random) {
    throw UsageError("embed needs exactly one of --message or --random-bits");
  }
  const std::uint64_t key = parse_key(args.key_text);
  const Image cover = read_pgm(args.in);
  std::vector<std::uint8_t> bits;
  if (args.has_message) {
    bits = encode_message(args.message);
  } else {
    if (args.random_bits == 0) throw UsageError("--random-bits must be >= 1");
    bits = keyed_payload_bits(key, args.random_bits);
  }
  EmbedParams params;
  params.alpha = args.alpha;
  const Image marked = embed(cover, key, params, bits);
  write_pgm(marked, args.out);
  std::cout << "bits_embedded=" << bits.size() << "\n"
            << "capacity_bits=" << embed_capacity(cover.size) << "\n"
            << "mse=" << fmt6(mse(cover, marked)) << "\n"
            << "psnr_db=" << fmt6(psnr_db(cover, marked)) << "\n";
  return 0;
}

struct ExtractArgs {
  std::string in, key_text = "1";
  std::uint64_t bits = 0;
  double threshold = 0.0;
  bool has_bits = false;
};

int run_extract(const ExtractArgs& args) {
  const std::uint64_t key = parse_key(args.key_text);
  const Image suspect = read_pgm(args.in);
  EmbedParams params;
  params.threshold = args.threshold;
  if (args.has_bits) {
    if (args.bits == 0) throw UsageError("--bits must be >= 1");
    const std::vector<std::uint8_t> bits = extract(suspect, key, params, args.bits);
    std::cout << "bits=" << bits_to_string(bits) << "\n";
    try {
      const std::string text = decode_message(bits);
      std::cout << "text=" << text << "\n";
    } catch (const DataError&) {
      // Raw bits that do not parse as a framed message are still a result.
    }
    return 0;
  }
  // Header mode: read the 16-bit length first, then the declared payload.
  const CoefficientSet coeffs = forward(suspect);
  const std::vector<std::uint8_t> header = extract_from_coefficients(coeffs, key, params, 16);
  std::size_t len = 0;
  for (int i = 0; i < 16; ++i) len = (len << 1) | header[i];
  const std::size_t total = 16 + 8 * len;
  if (total > embed_capacity(suspect.size)) {
    throw DataError("length mismatch: header declares " + std::to_string(len) +
                    " bytes, beyond image capacity");
  }
  const std::vector<std::uint8_t> bits = extract_from_coefficients(coeffs, key, params, total);
  const std::string text = decode_message(bits);
  std::cout << "bits=" << bits_to_string(bits) << "\n"
            << "text=" << text << "\n";
  return 0;
}

struct AttackArgs {
  std::string in, out, kind = "none";
  double param = 0.0;
  std::uint64_t noise_seed = 0;
};

int run_attack(const AttackArgs& args) {
  const Image input = read_pgm(args.in);
  AttackSpec spec;
  spec.kind = parse_attack_kind(args.kind);
  spec.param = args.param;
  spec.noise_seed = args.noise_seed;
  write_pgm(apply_attack(input, spec), args.out);
  return 0;
}

struct SynthArgs {
  std::string kind = "gradient", out;
  int size = 512;
  std::uint64_t seed = 0;
};

int run_synth(const SynthArgs& args) {
  write_pgm(synth_image(parse_synth_kind(args.kind), args.size, args.seed), args.out);
  return 0;
}

struct EvaluateArgs {
  std::string config, csv;
};

int run_evaluate(const EvaluateArgs& args) {
  const SweepConfig config = load_sweep_config(args.config);
  if (args.csv.empty()) {
    run_sweep(config, std::cout);
    return 0;
  }
  std::ofstream out(args.csv, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + args.csv);
  run_sweep(config, out);
  if (!out) throw DataError("write failed: " + args.csv);
  return 0;
}

struct DumpArgs {
  std::string in, out;
};

int run_dump(const DumpArgs& args) {
  const Image input = read_pgm(args.in);
  const CoefficientSet coeffs = forward(input);
  if (args.out.empty()) {
    dump_coefficients(coeffs, std::cout);
    return 0;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + args.out);
  dump_coefficients(coeffs, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"keyed spread-spectrum watermarking for grayscale images"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  CLI::App* cmd_embed = app.add_subcommand("embed", "embed a payload into a cover image");
  cmd_embed->add_option("--in", embed_args.in, "cover PGM")->required();
  cmd_embed->add_option("--out", embed_args.out, "marked PGM")->required();
  cmd_embed->add_option("--key", embed_args.key_text, "key (decimal or 0x-hex)");
  cmd_embed->add_option("--alpha", embed_args.alpha, "embedding amplitude");
  CLI::Option* opt_message =
      cmd_embed->add_option("--message", embed_args.message, "payload text");
  CLI::Option* opt_random =
      cmd_embed->add_option("--random-bits", embed_args.random_bits, "keyed random payload size");
  opt_message->excludes(opt_random);
  opt_random->excludes(opt_message);

  ExtractArgs extract_args;
  CLI::App* cmd_extract = app.add_subcommand("extract", "recover a payload from an image");
  cmd_extract->add_option("--in", extract_args.in, "suspect PGM")->required();
  cmd_extract->add_option("--key", extract_args.key_text, "key (decimal or 0x-hex)");
  CLI::Option* opt_bits =
      cmd_extract->add_option("--bits", extract_args.bits, "bit count (omit to use the header)");
  cmd_extract->add_option("--threshold", extract_args.threshold, "detection threshold");

  AttackArgs attack_args;
  CLI::App* cmd_attack = app.add_subcommand("attack", "degrade an image");
  cmd_attack->add_option("--in", attack_args.in, "input PGM")->required();
  cmd_attack->add_option("--out", attack_args.out, "output PGM")->required();
  cmd_attack->add_option("--attack", attack_args.kind, "none, awgn or jpeg")->required();
  cmd_attack->add_option("--param", attack_args.param, "sigma for awgn, quality for jpeg");
  cmd_attack->add_option("--noise-seed", attack_args.noise_seed, "awgn seed");

  SynthArgs synth_args;
  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a synthetic cover image");
  cmd_synth->add_option("--kind", synth_args.kind, "gradient, radial, checker, noise or phantom");
  cmd_synth->add_option("--size", synth_args.size, "image side");
  cmd_synth->add_option("--seed", synth_args.seed, "generator seed");
  cmd_synth->add_option("--out", synth_args.out, "output PGM")->required();

  EvaluateArgs evaluate_args;
  CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "run an evaluation sweep");
  cmd_evaluate->add_option("--config", evaluate_args.config, "sweep config file")->required();
  cmd_evaluate->add_option("--csv", evaluate_args.csv, "CSV output path (default stdout)");

  DumpArgs dump_args;
  CLI::App* cmd_dump = app.add_subcommand("dump", "dump transform coefficients as CSV");
  cmd_dump->add_option("--in", dump_args.in, "input PGM")->required();
  cmd_dump->add_option("--out", dump_args.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cmd_embed->parsed()) {
      embed_args.has_message = opt_message->count() > 0;
      embed_args.has_random = opt_random->count() > 0;
      return run_embed(embed_args);
    }
    if (cmd_extract->parsed()) {
      extract_args.has_bits = opt_bits->count() > 0;
      return run_extract(extract_args);
    }
    if (cmd_attack->parsed()) return run_attack(attack_args);
    if (cmd_synth->parsed()) return run_synth(synth_args);
    if (cmd_evaluate->parsed()) return run_evaluate(evaluate_args);
    if (cmd_dump->parsed()) return run_dump(dump_args);
    throw InternalError("no subcommand dispatched");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
