// abcde: annotate corpora with the lexical feature battery and summarize the
// resulting records.
//
//   abcde annotate --config run.json --input posts.jsonl.gz --adapter reddit --output out.jsonl
//   abcde annotate --config run.json --dump-registry
//   abcde report --input out.jsonl --group-by source --features bpm_flag,valence_avg --out report.csv
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abcde/abcde.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct AnnotateArgs {
  std::string config, input, adapter, output, format, report;
  int workers = 0;
  bool dump_registry = false;
};

struct ReportArgs {
  std::string input, group_by, out, ratio;
  std::vector<std::string> features;
  bool weighted = false;
};

int annotate(const AnnotateArgs& args) {
  std::string config_path = args.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("ABCDE_CONFIG")) config_path = env;
  }
  if (config_path.empty()) throw abcde::ConfigError("no config given (use --config or ABCDE_CONFIG)");

  auto cfg = abcde::RunConfig::load(config_path);
  if (!args.adapter.empty()) cfg.adapter = args.adapter;
  if (!args.format.empty()) {
    const auto f = abcde::parse_format(args.format);
    if (!f) throw abcde::ConfigError("unknown format '" + args.format + "'");
    cfg.format = *f;
  }
  if (args.workers > 0) cfg.workers = static_cast<unsigned>(args.workers);

  const auto annotator = abcde::build_annotator(cfg);
  if (args.dump_registry) {
    std::cout << annotator.columns().manifest().dump(2) << '\n';
    if (args.input.empty()) return 0;
  }
  if (args.input.empty() || args.output.empty()) throw abcde::ConfigError("annotate needs --input and --output");

  const auto report = abcde::run(annotator, cfg, {args.input, args.output, args.report});
  std::cerr << "annotated " << report.annotated << " instances (" << report.ingest.records_read << " records read, "
            << report.ingest.records_skipped << " skipped, " << report.errors << " with errors)\n";
  return 0;
}

int report(const ReportArgs& args) {
  std::ifstream in(args.input, std::ios::binary);
  if (!in) throw abcde::Error("cannot open records '" + args.input + "'");
  abcde::RecordReader reader(in);
  if (reader.columns().empty()) throw abcde::Error("'" + args.input + "' holds no records");

  std::vector<std::string> features = args.features;
  std::string num, den;
  if (!args.ratio.empty()) {
    const auto colon = args.ratio.find(':');
    if (colon == std::string::npos) throw abcde::ConfigError("--ratio expects numerator:denominator");
    num = args.ratio.substr(0, colon);
    den = args.ratio.substr(colon + 1);
    for (const auto& c : {num, den}) {
      if (std::find(features.begin(), features.end(), c) == features.end()) features.push_back(c);
    }
  }
  abcde::Aggregator agg(reader.columns(), abcde::GroupBy::parse(args.group_by), features, args.weighted);
  std::vector<abcde::Value> row;
  while (reader.next(row)) agg.add(row);

  auto rows = agg.rows();
  if (!num.empty()) {
    for (const auto& [group, ratio] : abcde::ratio_series(agg, num, den)) {
      if (ratio) rows.push_back({agg.group_by().name(), group, num + "/" + den, "ratio", *ratio});
    }
  }
  std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
  if (!out) throw abcde::Error("cannot write '" + args.out + "'");
  abcde::write_report_csv(out, rows);
  if (agg.skipped()) std::cerr << agg.skipped() << " records had no " << agg.group_by().name() << " value\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical feature annotation and aggregate reports"};
  app.require_subcommand(1);

  AnnotateArgs a;
  auto* ann = app.add_subcommand("annotate", "Annotate a corpus file");
  ann->add_option("--config", a.config, "Run config (JSON); defaults to $ABCDE_CONFIG");
  ann->add_option("--input", a.input, "Input corpus (plain or gzip)");
  ann->add_option("--adapter", a.adapter, "Source adapter")->check(CLI::IsMember(abcde::adapter_names()));
  ann->add_option("--output", a.output, "Output records");
  ann->add_option("--format", a.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  ann->add_option("--workers", a.workers, "Worker threads")->check(CLI::PositiveNumber);
  ann->add_option("--report", a.report, "Run report path (default <output>.report.json)");
  ann->add_flag("--dump-registry", a.dump_registry, "Print the feature column manifest");

  ReportArgs r;
  auto* rep = app.add_subcommand("report", "Grouped statistics over annotated records");
  rep->add_option("--input", r.input, "Records (jsonl or csv)")->required();
  rep->add_option("--group-by", r.group_by, "source | year | decade | demo:<attr>")->required();
  rep->add_option("--features", r.features, "Columns to summarize")->required()->delimiter(',');
  rep->add_option("--out", r.out, "Tidy CSV output")->required();
  rep->add_option("--ratio", r.ratio, "Also emit numerator:denominator percent-flag ratios");
  rep->add_flag("--weight", r.weighted, "Weight instances by match_count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*ann) return annotate(a);
    return report(r);
  } catch (const abcde::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const abcde::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
