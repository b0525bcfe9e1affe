#include "phfeat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "phfeat/error.hpp"
#include "phfeat/experiment.hpp"
#include "phfeat/oracle_suite.hpp"

namespace phfeat::cli {

namespace fs = std::filesystem;

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  return f;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f = open_out(path, std::ios::out | std::ios::binary);
  f << content;
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

// SplitMix64 finaliser; derives independent per-subject seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct SynthArgs {
  std::string out;
  int n = 0;
  int size = 64;
  std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (a.n <= 0 || a.n % 2 != 0) throw ParameterError("--n must be a positive even number (balanced classes)");
  const fs::path root(a.out);
  std::error_code ec;
  fs::create_directories(root / "images", ec);
  if (ec) throw IoError("cannot create '" + (root / "images").string() + "': " + ec.message());

  std::vector<ManifestRecord> records;
  char name[32];
  for (int k = 0; k < a.n; ++k) {
    const TextureClass cls = k % 2 == 0 ? TextureClass::Holes1 : TextureClass::Holes2;
    std::snprintf(name, sizeof(name), "s%04d", k);
    const GrayImage img = synth_texture(cls, a.size, mix(a.seed * 0x100000001b3ull + static_cast<std::uint64_t>(k)));
    const std::string rel = std::string("images/") + name + ".pgm";
    write_file(root / rel, save_pgm(img));
    records.push_back({name, std::string(to_string(cls)), {rel}, std::nullopt});
  }
  std::ofstream manifest = open_out(root / "manifest.jsonl");
  write_manifest(manifest, records);
  if (!manifest) throw IoError("failed writing manifest");
  out << "wrote " << a.n << " subjects to " << (root / "manifest.jsonl").string() << '\n';
  return kOk;
}

struct ExtractArgs {
  std::string manifest;
  std::string filtration = "cubical";
  std::string patterns;
  std::string vectorizer = "bc";
  std::string combine = "concat";
  int gamma = SamplingGrid::kDefaultCount;
  int levels = 5;
  int r = 1;
  std::string out;
  std::optional<std::uint64_t> split_seed;
  double test_frac = 0.2;
  std::string barcodes_dir;
  std::string clouds_dir;
};

std::vector<UlbpPattern> parse_pattern_list(const std::string& text) {
  std::vector<UlbpPattern> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto p = parse_pattern(item);
    if (!p) throw ParameterError("bad ULBP pattern '" + item + "' (expected G<1-7>R<1-8>)");
    out.push_back(*p);
  }
  return out;
}

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  ExtractConfig cfg;
  cfg.filtration = *parse_filtration(a.filtration);
  cfg.patterns = parse_pattern_list(a.patterns);
  if (cfg.filtration == Filtration::Rips && cfg.patterns.empty()) {
    throw ParameterError("--patterns is required with --filtration rips");
  }
  if (cfg.filtration == Filtration::Cubical && !cfg.patterns.empty()) {
    throw ParameterError("--patterns only applies to --filtration rips");
  }
  cfg.vectorizer.method = *parse_vectorizer(a.vectorizer);
  cfg.vectorizer.gamma = a.gamma;
  cfg.vectorizer.landscape.levels = a.levels;
  cfg.vectorizer.tropical.r = a.r;
  cfg.combine = *parse_combine(a.combine);
  cfg.split_seed = a.split_seed;
  cfg.test_fraction = a.test_frac;

  std::ifstream in(a.manifest);
  if (!in) throw DataError("cannot open manifest '" + a.manifest + "'");
  const std::vector<ManifestRecord> records = read_manifest(in);
  const fs::path base = fs::path(a.manifest).parent_path();

  auto t0 = Clock::now();
  const std::vector<SubjectBarcodes> subjects = compute_barcodes(records, base, cfg);
  const double t_barcodes = ms_since(t0);

  if (!a.barcodes_dir.empty()) {
    fs::create_directories(a.barcodes_dir);
    for (const SubjectBarcodes& s : subjects) {
      for (std::size_t k = 0; k < s.per_slice.size(); ++k) {
        std::ofstream f = open_out(fs::path(a.barcodes_dir) / (s.id + "_" + std::to_string(k) + ".csv"));
        const std::vector<Barcode> both = {s.per_slice[k].dim0, s.per_slice[k].dim1};
        write_barcode_csv(f, both);
      }
    }
  }
  if (!a.clouds_dir.empty() && cfg.filtration == Filtration::Rips) {
    fs::create_directories(a.clouds_dir);
    std::vector<UlbpPattern> patterns = cfg.patterns;
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    for (const ManifestRecord& rec : records) {
      for (std::size_t i = 0; i < rec.images.size(); ++i) {
        const fs::path p(rec.images[i]);
        const GrayImage img = load_image_file((p.is_absolute() ? p : base / p).string());
        for (const UlbpPattern& pat : patterns) {
          std::ofstream f = open_out(fs::path(a.clouds_dir) /
                                     (rec.id + "_" + std::to_string(i) + "_" + to_string(pat) + ".csv"));
          write_point_cloud_csv(f, select_landmarks(img, pat));
        }
      }
    }
  }

  t0 = Clock::now();
  const Extraction ex = vectorize_subjects(subjects, cfg);
  const double t_vectorize = ms_since(t0);
  {
    std::ofstream f = open_out(a.out);
    write_feature_csv(f, ex.table);
    if (!f) throw IoError("failed writing '" + a.out + "'");
  }
  out << "subjects " << ex.table.rows.size() << ", columns " << ex.table.columns.size() << ", barcodes per dim "
      << subjects.front().per_slice.size() << ", grid fitted on " << ex.grid_subjects.size() << " subjects ("
      << static_cast<long>(t_barcodes) << " ms persistence, " << static_cast<long>(t_vectorize)
      << " ms vectorization)\n";
  return kOk;
}

struct ExperimentArgs {
  std::string features;
  std::string classifier = "logreg";
  std::string select = "none";
  double test_frac = 0.2;
  std::uint64_t seed = 0;
  std::string out;
  std::string name;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.classifier = *parse_classifier(a.classifier);
  cfg.selection = *parse_selection(a.select);
  cfg.test_fraction = a.test_frac;
  cfg.seed = a.seed;

  auto t0 = Clock::now();
  std::ifstream in(a.features);
  if (!in) throw DataError("cannot open features '" + a.features + "'");
  const FeatureTable table = read_feature_csv(in);
  const double t_load = ms_since(t0);
  const ExperimentResult res = run_experiment(table, cfg);

  nlohmann::ordered_json report;
  report["tool"] = "phfeat";
  report["version"] = kToolVersion;
  report["config"] = {{"features", a.features},   {"classifier", a.classifier}, {"select", a.select},
                      {"test_frac", a.test_frac}, {"seed", a.seed}};
  report["seeds"] = {{"split", a.seed}, {"lasso_validation", a.seed + 1}};
  report["data"] = {{"subjects", table.rows.size()},
                    {"train", res.train_size},
                    {"test", res.test_ids.size()},
                    {"positive_label", res.positive_label},
                    {"features_in", res.features_in},
                    {"features_used", res.features_used}};
  if (res.lambda) {
    report["data"]["lasso_lambda"] = *res.lambda;
    report["data"]["lasso_converged"] = res.lasso_converged;
  }
  report["feature_matrix"] = a.features;
  report["metrics"] = metrics_json(res.metrics);
  nlohmann::ordered_json timings;
  timings["load"] = t_load;
  for (const auto& [stage, ms] : res.timings_ms) timings[stage] = ms;
  report["timings_ms"] = timings;

  {
    std::ofstream f = open_out(a.out);
    f << report.dump(2) << '\n';
    if (!f) throw IoError("failed writing '" + a.out + "'");
  }
  if (!res.lasso_converged) out << "warning: lasso did not converge; using its current support\n";
  const std::string name = a.name.empty() ? fs::path(a.features).stem().string() : a.name;
  out << format_metrics_table({{name, res.metrics}});
  return kOk;
}

struct OracleArgs {
  std::string check;
  int trials = 200;
  std::uint64_t seed = 0;
  bool inject_fault = false;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  if (a.trials < 1) throw ParameterError("--trials must be positive");
  const auto fault = a.inject_fault ? detail::Fault::ReductionOffByOne : detail::Fault::None;
  oracle::TrialOutcome r;
  if (a.check == "cubical") {
    r = oracle::check_cubical(a.trials, a.seed, fault);
  } else if (a.check == "rips") {
    r = oracle::check_rips(a.trials, a.seed, fault);
  } else {
    r = oracle::check_gradients(a.trials, a.seed);
  }
  out << a.check << ": " << r.trials << " trials, " << r.mismatches << " mismatches\n";
  if (r.ok()) return kOk;
  out << "first failure: " << r.detail << "\nreproduce: phfeat oracle --check " << a.check
      << " --trials 1 --seed " << *r.first_failing_seed << (a.inject_fault ? " --inject-fault" : "") << '\n';
  return kOracleMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent-homology features from grayscale images", "phfeat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Write a synthetic two-class dataset (PGM images + JSONL manifest)");
  s->add_option("--out", synth.out, "Output directory")->required();
  s->add_option("--n", synth.n, "Number of subjects (even)")->required();
  s->add_option("--size", synth.size, "Image side length (>= 32)")->capture_default_str();
  s->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

  ExtractArgs ex;
  auto* e = app.add_subcommand("extract", "Compute barcodes and write a feature matrix CSV");
  e->add_option("--manifest", ex.manifest, "JSONL manifest")->required();
  e->add_option("--filtration", ex.filtration)->check(CLI::IsMember({"cubical", "rips"}))->capture_default_str();
  e->add_option("--patterns", ex.patterns, "Comma-separated ULBP patterns, e.g. G4R1,G2R3 (rips only)");
  e->add_option("--vectorizer", ex.vectorizer)->check(CLI::IsMember({"bc", "ps", "es", "pl", "tc"}))->capture_default_str();
  e->add_option("--combine", ex.combine)->check(CLI::IsMember({"aggregate", "concat"}))->capture_default_str();
  e->add_option("--gamma", ex.gamma, "Samples per curve")->check(CLI::Range(2, 1000000))->capture_default_str();
  e->add_option("--levels", ex.levels, "Landscape levels")->check(CLI::Range(1, 1000))->capture_default_str();
  e->add_option("--r", ex.r, "Tropical coordinate r")->check(CLI::Range(1, 1000000))->capture_default_str();
  e->add_option("--out", ex.out, "Feature CSV path")->required();
  e->add_option("--split-seed", ex.split_seed, "Fit grids on the training part of this stratified split");
  e->add_option("--test-frac", ex.test_frac, "Test fraction used with --split-seed")->capture_default_str();
  e->add_option("--barcodes-dir", ex.barcodes_dir, "Also dump per-slice barcode CSVs here");
  e->add_option("--clouds-dir", ex.clouds_dir, "Also dump landmark point clouds here (rips)");

  ExperimentArgs xp;
  auto* x = app.add_subcommand("experiment", "Split, standardize, select, classify and report metrics");
  x->add_option("--features", xp.features, "Feature CSV from `extract`")->required();
  x->add_option("--classifier", xp.classifier)->check(CLI::IsMember({"logreg", "knn"}))->capture_default_str();
  x->add_option("--select", xp.select)->check(CLI::IsMember({"none", "lasso"}))->capture_default_str();
  x->add_option("--test-frac", xp.test_frac)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  x->add_option("--seed", xp.seed)->capture_default_str();
  x->add_option("--out", xp.out, "Report JSON path")->required();
  x->add_option("--name", xp.name, "Row name in the printed table");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Randomized engine-vs-oracle equivalence trials");
  o->add_option("--check", orc.check)->required()->check(CLI::IsMember({"cubical", "rips", "gradients"}));
  o->add_option("--trials", orc.trials)->capture_default_str();
  o->add_option("--seed", orc.seed)->capture_default_str();
  o->add_flag("--inject-fault", orc.inject_fault, "Run against a deliberately broken reduction")->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& pe) {
    err << "usage error: " << pe.what() << '\n';
    return kUsage;
  }

  try {
    if (*s) return cmd_synth(synth, out);
    if (*e) return cmd_extract(ex, out);
    if (*x) return cmd_experiment(xp, out);
    return cmd_oracle(orc, out);
  } catch (const IoError& ioe) {
    err << "I/O error: " << ioe.what() << '\n';
    return kIoError;
  } catch (const ParameterError& pe) {
    err << "usage error: " << pe.what() << '\n';
    return kUsage;
  } catch (const Error& de) {
    err << "data error: " << de.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& fe) {
    err << "I/O error: " << fe.what() << '\n';
    return kIoError;
  }
}

}  // namespace phfeat::cli
