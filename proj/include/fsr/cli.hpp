#pragma once

// Command-line front end: sample, reconstruct, evaluate, bench.
//
// Exit codes: 0 success, 2 usage or input error, 1 internal error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fsr/bench.hpp"
#include "fsr/core.hpp"
#include "fsr/metrics.hpp"
#include "fsr/pgm.hpp"
#include "fsr/reconstruct.hpp"
#include "fsr/sampling.hpp"

namespace fsr::cli {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// FSR_THREADS if set to a positive integer, otherwise the logical core count.
inline int default_threads() {
  if (const char* env = std::getenv("FSR_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Opens `path` for appending; writes `header` only when the file is new or empty.
inline std::ofstream open_csv(const std::filesystem::path& path, std::string_view header) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw UsageError("cannot open CSV file " + path.string());
  if (fresh) out << header << '\n';
  return out;
}

inline ArgmaxStrategy parse_argmax(const std::string& s) {
  if (s == "tree") return ArgmaxStrategy::tree;
  if (s == "linear") return ArgmaxStrategy::linear;
  throw UsageError("unknown argmax strategy '" + s + "' (expected tree or linear)");
}

inline std::vector<std::filesystem::path> list_pgm(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

struct SampleArgs {
  std::string input, output, mask;
  std::uint64_t seed = 42;
};

inline int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const GrayImage original = pgm::read_image(a.input);
  const SampledImage s = quarter_sample(original, a.seed);
  pgm::write_image(a.output, s.image);
  pgm::write_mask(a.mask, s.mask);
  out << "sampled=" << s.known_count() << "\n";
  out << "pixels=" << original.pixel_count() << "\n";
  return 0;
}

struct ReconstructArgs {
  std::string input, mask, output, reference;
  FsrParams params;
  std::string argmax = "tree";
};

inline int cmd_reconstruct(ReconstructArgs a, std::ostream& out) {
  a.params.argmax = parse_argmax(a.argmax);
  a.params.validate();
  const SampledImage sampled(pgm::read_image(a.input), pgm::read_mask(a.mask));
  const auto blocks = block_partition(sampled.image.height(), sampled.image.width(), a.params).size();
  const auto timed = time_block("reconstruct", [&] { return reconstruct_image(sampled, a.params); });
  pgm::write_image(a.output, timed.result);
  out << "elapsed_s=" << timed.seconds << "\n";
  out << "blocks=" << blocks << "\n";
  out << "blocks_per_s=" << (timed.seconds > 0.0 ? blocks / timed.seconds : 0.0) << "\n";
  if (!a.reference.empty()) {
    // Compare what was written: quantized 8-bit output.
    const QualityReport q = psnr(pgm::read_image(a.reference), pgm::read_image(a.output));
    out << "psnr_db=" << format_psnr(q.psnr_db) << "\n";
  }
  return 0;
}

struct EvaluateArgs {
  std::string reference, input, csv;
};

inline int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, fs::path>> pairs;  // (test, reference)
  if (fs::is_directory(a.input)) {
    if (!fs::is_directory(a.reference)) throw UsageError("batch mode needs --reference to be a directory");
    for (const fs::path& p : list_pgm(a.input)) pairs.emplace_back(p, fs::path(a.reference) / p.filename());
    if (pairs.empty()) throw UsageError("no .pgm files in " + a.input);
  } else {
    pairs.emplace_back(a.input, a.reference);
  }

  std::optional<std::ofstream> csv;
  if (!a.csv.empty()) csv = open_csv(a.csv, "input,psnr_db,mse,elapsed_s");
  const bool batch = pairs.size() > 1 || fs::is_directory(a.input);
  for (const auto& [test_path, ref_path] : pairs) {
    const auto timed = time_block("evaluate", [&] {
      return psnr(pgm::read_image(ref_path), pgm::read_image(test_path));
    });
    const QualityReport& q = timed.result;
    if (batch) out << "input=" << test_path.filename().string() << " ";
    out << "psnr_db=" << format_psnr(q.psnr_db) << (batch ? " " : "\n");
    out << "mse=" << q.mse << "\n";
    if (csv) *csv << test_path.string() << ',' << format_psnr(q.psnr_db) << ',' << q.mse << ',' << timed.seconds << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string input;
  std::string synthetic;  // "HxW"
  std::string sweep;      // "" or "full"
  std::vector<int> iterations, supports, threads;
  std::vector<double> rhos, gammas;
  std::vector<std::string> argmax;
  int block_size = 4;
  std::uint64_t seed = 42;
  int repeats = 1;
  std::string csv;
  bool dry_run = false;
};

inline bench::SweepGrid build_grid(const BenchArgs& a, int fallback_threads) {
  bench::SweepGrid g;
  if (a.sweep == "full") {
    g = bench::full_sweep_grid();
  } else if (!a.sweep.empty()) {
    throw UsageError("unknown sweep '" + a.sweep + "' (expected full)");
  } else {
    const FsrParams d;
    g.iterations = {d.iterations};
    g.supports = {d.support()};
    g.rhos = {d.rho_hat};
    g.gammas = {d.gamma};
  }
  g.target_block = a.block_size;
  g.threads = {fallback_threads};
  if (!a.iterations.empty()) g.iterations = a.iterations;
  if (!a.supports.empty()) g.supports = a.supports;
  if (!a.rhos.empty()) g.rhos = a.rhos;
  if (!a.gammas.empty()) g.gammas = a.gammas;
  if (!a.threads.empty()) g.threads = a.threads;
  if (!a.argmax.empty()) {
    g.argmax.clear();
    for (const auto& s : a.argmax) g.argmax.push_back(parse_argmax(s));
  }
  return g;
}

inline std::vector<bench::BenchInput> load_bench_inputs(const BenchArgs& a) {
  namespace fs = std::filesystem;
  std::vector<bench::BenchInput> inputs;
  auto add = [&](std::string name, GrayImage img) {
    SampledImage s = quarter_sample(img, a.seed);
    inputs.push_back({std::move(name), std::move(img), std::move(s)});
  };
  if (!a.input.empty()) {
    if (fs::is_directory(a.input)) {
      for (const fs::path& p : list_pgm(a.input)) add(p.filename().string(), pgm::read_image(p));
    } else {
      add(fs::path(a.input).filename().string(), pgm::read_image(a.input));
    }
  }
  if (!a.synthetic.empty()) {
    int h = 0, w = 0;
    char x = 0;
    std::istringstream ss(a.synthetic);
    if (!(ss >> h >> x >> w) || x != 'x' || h < 1 || w < 1) throw UsageError("--synthetic expects HxW, e.g. 480x640");
    add("synthetic_" + a.synthetic, bench::test_pattern(h, w));
  }
  if (inputs.empty()) throw UsageError("bench needs --input or --synthetic");
  return inputs;
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.repeats < 1) throw UsageError("--repeats must be >= 1");
  const bench::SweepGrid grid = build_grid(a, default_threads());
  if (grid.iterations.empty() || grid.supports.empty() || grid.rhos.empty() || grid.gammas.empty() ||
      grid.threads.empty() || grid.argmax.empty())
    throw UsageError("empty parameter grid");
  const std::vector<bench::SweepPoint> points = bench::enumerate(grid);
  if (points.empty()) throw UsageError("empty parameter grid");
  out << "points=" << points.size() << "\n";
  if (a.dry_run) return 0;

  const auto inputs = load_bench_inputs(a);
  std::optional<std::ofstream> csv;
  if (!a.csv.empty()) csv = open_csv(a.csv, bench::kCsvHeader);
  out << bench::kCsvHeader << "\n";

  std::vector<bench::BenchRow> rows;
  for (const auto& pt : points) {
    rows.push_back(bench::run_point(pt.params, inputs, a.repeats));
    bench::write_csv_row(out, rows.back());
    if (csv) {
      bench::write_csv_row(*csv, rows.back());
      csv->flush();
    }
  }

  // Relative comparisons between rows that differ only in threads or argmax.
  auto key = [](const FsrParams& p) {
    std::ostringstream k;
    k << p.support() << ',' << p.iterations << ',' << p.rho_hat << ',' << p.gamma;
    return k.str();
  };
  std::map<std::string, std::vector<const bench::BenchRow*>> groups;
  for (const auto& r : rows) groups[key(r.params)].push_back(&r);
  for (const auto& [k, members] : groups) {
    for (const auto* r : members) {
      for (const auto* base : members) {
        if (base->params.argmax == r->params.argmax && base->params.threads == 1 && r->params.threads > 1)
          out << "speedup[" << k << "," << to_string(r->params.argmax) << "," << r->params.threads
              << "]=" << base->elapsed_s / r->elapsed_s << "\n";
        if (base->params.threads == r->params.threads && base->params.argmax == ArgmaxStrategy::linear &&
            r->params.argmax == ArgmaxStrategy::tree)
          out << "tree_over_linear_time[" << k << "," << r->params.threads << "]=" << r->elapsed_s / base->elapsed_s
              << "\n";
      }
    }
  }
  return 0;
}

/// Parses `args` (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Frequency selective reconstruction of images with missing pixels"};
  app.require_subcommand(1, 1);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Quarter-sample an image (one random pixel per 2x2 cell)");
  sample->add_option("--input", sample_args.input, "Input 8-bit PGM")->required();
  sample->add_option("--output", sample_args.output, "Sampled image PGM")->required();
  sample->add_option("--mask", sample_args.mask, "Mask PGM (255 = sampled)")->required();
  sample->add_option("--seed", sample_args.seed, "Sampling seed")->capture_default_str();

  ReconstructArgs rec_args;
  rec_args.params.threads = default_threads();
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct missing pixels");
  rec->add_option("--input", rec_args.input, "Sampled image PGM")->required();
  rec->add_option("--mask", rec_args.mask, "Mask PGM (non-zero = sampled)")->required();
  rec->add_option("--output", rec_args.output, "Reconstructed PGM")->required();
  rec->add_option("--reference", rec_args.reference, "Original image; prints PSNR of the output");
  rec->add_option("--block-size", rec_args.params.target_block, "Target block size B")->capture_default_str();
  rec->add_option("--border", rec_args.params.border, "Border L (S = B + 2L)")->capture_default_str();
  rec->add_option("--iterations", rec_args.params.iterations, "Iterations I")->capture_default_str();
  rec->add_option("--rho", rec_args.params.rho_hat, "Spatial decay")->capture_default_str();
  rec->add_option("--gamma", rec_args.params.gamma, "Orthogonality deficiency compensation")->capture_default_str();
  rec->add_option("--threads", rec_args.params.threads, "Worker threads")->capture_default_str();
  rec->add_option("--seed", rec_args.params.seed, "Seed (recorded only)")->capture_default_str();
  rec->add_option("--argmax", rec_args.argmax, "tree or linear")->capture_default_str();
  rec->add_flag("--early-stop", rec_args.params.early_stop, "Stop a block once the best objective is negligible");

  EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "PSNR of a test image (or directory) against a reference");
  eval->add_option("--reference", eval_args.reference, "Reference PGM or directory")->required();
  eval->add_option("--input", eval_args.input, "Test PGM or directory")->required();
  eval->add_option("--csv", eval_args.csv, "Append input,psnr_db,mse,elapsed_s rows");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Timing and quality over a parameter grid");
  bench_cmd->add_option("--input", bench_args.input, "Original PGM or directory of PGMs");
  bench_cmd->add_option("--synthetic", bench_args.synthetic, "Add a generated HxW test image");
  bench_cmd->add_option("--sweep", bench_args.sweep, "Named grid: full (640 points)");
  bench_cmd->add_option("--iterations", bench_args.iterations, "Iteration counts")->delimiter(',');
  bench_cmd->add_option("--support", bench_args.supports, "Support sizes S")->delimiter(',');
  bench_cmd->add_option("--rho", bench_args.rhos, "Spatial decay values")->delimiter(',');
  bench_cmd->add_option("--gamma", bench_args.gammas, "Compensation values")->delimiter(',');
  bench_cmd->add_option("--threads", bench_args.threads, "Thread counts")->delimiter(',');
  bench_cmd->add_option("--argmax", bench_args.argmax, "Argmax strategies (tree,linear)")->delimiter(',');
  bench_cmd->add_option("--block-size", bench_args.block_size, "Target block size B")->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Sampling seed")->capture_default_str();
  bench_cmd->add_option("--repeats", bench_args.repeats, "Runs per point (median reported)")->capture_default_str();
  bench_cmd->add_option("--csv", bench_args.csv, "Append result rows to this CSV");
  bench_cmd->add_flag("--dry-run", bench_args.dry_run, "Only enumerate the grid");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = e.get_exit_code();
    if (code == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sample) return cmd_sample(sample_args, out);
    if (*rec) return cmd_reconstruct(rec_args, out);
    if (*eval) return cmd_evaluate(eval_args, out);
    if (*bench_cmd) return cmd_bench(bench_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const pgm::PgmError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

inline int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace fsr::cli
