// coref: author-name disambiguation over co-authorship graphs.
//
// Subcommands:
//   ingest        parse DBLP XML or a fixture and write a graph snapshot
//   disambiguate  score all mention pairs of one name and evaluate
//   sweep         re-threshold the scores across a rho list, all measures
//   stats         print graph counts
//
// Exit codes: 0 success, 2 input/parse error, 3 query error, 1 otherwise.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coref/disambiguator.hpp"
#include "coref/evaluation.hpp"
#include "coref/graph.hpp"
#include "coref/ingest.hpp"
#include "coref/io.hpp"
#include "coref/log.hpp"
#include "coref/similarity.hpp"
#include "coref/snapshot.hpp"

namespace fs = std::filesystem;
using namespace coref;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitQuery = 3;

// Raised for problems with the query itself (absent name, too few mentions).
struct QueryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input_path;
  std::string input_kind = "auto";  // xml | fixture | snapshot | auto
  std::string query_name;
  std::string measure = "cn";
  double rho = 0.0;
  std::string rho_list;
  bool include_same_paper = true;
  std::string output_dir = ".";
  std::string report_formats = "json,csv";
  unsigned threads = 0;
  bool case_insensitive = false;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string detect_kind(const RunConfig& config) {
  if (config.input_kind != "auto") return config.input_kind;
  std::string path = config.input_path;
  auto ends_with = [&](std::string_view tail) {
    return path.size() >= tail.size() &&
           path.compare(path.size() - tail.size(), tail.size(), tail) == 0;
  };
  if (ends_with(".crg")) return "snapshot";
  if (ends_with(".xml") || ends_with(".xml.gz") || ends_with(".gz")) {
    return "xml";
  }
  return "fixture";
}

struct LoadedGraph {
  BipartiteGraph graph;
  IngestStats ingest_stats;
  BuildStats build_stats;
  bool from_snapshot = false;
};

LoadedGraph build_from_reader(RecordReader& reader) {
  GraphBuilder builder;
  while (auto record = reader.next()) {
    builder.add_paper(*record);
  }
  return {builder.finalize(), reader.stats(), builder.stats(), false};
}

LoadedGraph load_graph(const RunConfig& config) {
  std::string kind = detect_kind(config);
  log::info("loading ", config.input_path, " as ", kind);
  if (kind == "snapshot") {
    return {load_snapshot(config.input_path), {}, {}, true};
  }
  if (kind == "xml") {
    auto reader = parse_stream(open_input(config.input_path));
    return build_from_reader(*reader);
  }
  if (kind == "fixture") {
    auto reader = load_fixture(config.input_path);
    return build_from_reader(*reader);
  }
  throw std::invalid_argument("unknown input kind: " + kind);
}

void print_graph_stats(const LoadedGraph& loaded, std::ostream& out) {
  const BipartiteGraph& g = loaded.graph;
  out << "paper_count: " << g.paper_count() << "\n";
  out << "author_count: " << g.author_count() << "\n";
  out << "edge_count: " << g.edge_count() << "\n";
  if (!loaded.from_snapshot) {
    const IngestStats& in = loaded.ingest_stats;
    const BuildStats& build = loaded.build_stats;
    out << "records_emitted: " << in.records_emitted << "\n";
    out << "skipped_kind: " << in.skipped_kind << "\n";
    out << "missing_title_skips: " << in.missing_title_skips << "\n";
    out << "missing_key_skips: " << in.missing_key_skips << "\n";
    out << "unknown_entity_warnings: " << in.unknown_entity_warnings << "\n";
    out << "empty_author_warnings: " << in.empty_author_warnings << "\n";
    out << "bad_year_warnings: " << in.bad_year_warnings << "\n";
    out << "duplicate_key_skips: " << build.duplicate_key_skips << "\n";
    out << "zero_author_skips: " << build.zero_author_skips << "\n";
    out << "duplicate_author_collapses: " << build.duplicate_author_collapses
        << "\n";
    out << "rejected_record_names: " << build.rejected_record_names << "\n";
  }
}

std::string metric_or_empty(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::string metric_or_word(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string("undefined");
}

struct QueryRun {
  MentionSet mentions;
  std::string canonical;
};

QueryRun find_query_mentions(const BipartiteGraph& g,
                             const RunConfig& config) {
  NormalizedName normalized;
  try {
    normalized = normalize_name(config.query_name);
  } catch (const std::invalid_argument& e) {
    throw QueryError(std::string("bad query name: ") + e.what());
  }
  if (normalized.suffix) {
    log::warn("query carries the identifier '", *normalized.suffix,
              "'; matching the canonical name '", normalized.canonical,
              "' across all variants");
  }
  MentionSet ms =
      find_mentions(g, normalized.canonical, config.case_insensitive);
  if (ms.mentions.empty()) {
    throw QueryError("query name '" + normalized.canonical +
                     "' not present in the graph");
  }
  if (ms.mentions.size() < 2) {
    throw QueryError("nothing to disambiguate: only one mention of '" +
                     normalized.canonical + "'");
  }
  return {std::move(ms), normalized.canonical};
}

std::vector<CandidatePair> drop_same_paper(std::vector<CandidatePair> pairs) {
  pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                             [](const CandidatePair& pair) {
                               return pair.same_paper;
                             }),
              pairs.end());
  return pairs;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

int cmd_ingest(const RunConfig& config) {
  LoadedGraph loaded = load_graph(config);
  fs::create_directories(config.output_dir);
  fs::path snapshot_path = fs::path(config.output_dir) / "graph.crg";
  save_snapshot(loaded.graph, snapshot_path);
  print_graph_stats(loaded, std::cout);
  std::cout << "snapshot: " << snapshot_path.string() << "\n";
  return kExitOk;
}

int cmd_stats(const RunConfig& config) {
  LoadedGraph loaded = load_graph(config);
  print_graph_stats(loaded, std::cout);

  const BipartiteGraph& g = loaded.graph;
  std::size_t max_author_degree = 0, max_paper_degree = 0;
  std::size_t suffixed = 0;
  for (AuthorId a = 0; a < g.author_count(); ++a) {
    max_author_degree = std::max(max_author_degree, g.author_degree(a));
    if (g.author_suffix(a)) ++suffixed;
  }
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    max_paper_degree = std::max(max_paper_degree, g.paper_degree(p));
  }
  std::cout << "max_author_degree: " << max_author_degree << "\n";
  std::cout << "max_paper_degree: " << max_paper_degree << "\n";
  std::cout << "suffixed_authors: " << suffixed << "\n";
  return kExitOk;
}

int cmd_disambiguate(const RunConfig& config) {
  auto measure = measure_from(config.measure);
  if (!measure) {
    throw std::invalid_argument("unknown measure: " + config.measure);
  }
  if (!std::isfinite(config.rho)) {
    throw std::invalid_argument("rho must be finite");
  }
  LoadedGraph loaded = load_graph(config);
  QueryRun query = find_query_mentions(loaded.graph, config);

  auto pairs = run_all_pairs(loaded.graph, query.mentions, *measure,
                             config.rho, config.threads);
  if (!config.include_same_paper) pairs = drop_same_paper(std::move(pairs));

  auto report = evaluate_run(config.measure, config.rho,
                             query.mentions.mentions, pairs);
  auto clusters = transitive_closure(query.mentions.mentions.size(), pairs);

  fs::create_directories(config.output_dir);
  for (const std::string& format : split_csv(config.report_formats)) {
    if (format == "json") {
      write_file(fs::path(config.output_dir) / "report.json",
                 write_report(report, loaded.graph, query.mentions.mentions,
                              pairs, ReportFormat::json));
    } else if (format == "csv") {
      write_file(fs::path(config.output_dir) / "pairs.csv",
                 write_report(report, loaded.graph, query.mentions.mentions,
                              pairs, ReportFormat::csv));
    } else {
      throw std::invalid_argument("unsupported report format: " + format);
    }
  }

  std::ostringstream cluster_csv;
  cluster_csv << "mention,cluster,paper_key,author_key\n";
  for (const Mention& m : query.mentions.mentions) {
    cluster_csv << m.mention_id << ','
                << clusters.representative[m.mention_id] << ','
                << loaded.graph.paper_key(m.paper_id) << ','
                << loaded.graph.author_full_key(m.author_node) << '\n';
  }
  write_file(fs::path(config.output_dir) / "clusters.csv", cluster_csv.str());

  std::cout << "query: " << query.canonical << "\n";
  std::cout << "mentions: " << query.mentions.mentions.size() << "\n";
  std::cout << "pairs: " << pairs.size() << "\n";
  std::cout << "clusters: " << clusters.cluster_count() << "\n";
  std::cout << "tp: " << report.counts.tp << " fp: " << report.counts.fp
            << " tn: " << report.counts.tn << " fn: " << report.counts.fn
            << " unknown: " << report.counts.excluded_unknown << "\n";
  std::cout << "precision: " << metric_or_word(report.metric_report.precision)
            << " accuracy: " << metric_or_word(report.metric_report.accuracy)
            << " specificity: "
            << metric_or_word(report.metric_report.specificity)
            << " sensitivity: "
            << metric_or_word(report.metric_report.sensitivity) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& config) {
  std::vector<double> rhos;
  for (const std::string& token : split_csv(config.rho_list)) {
    try {
      rhos.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rho value: " + token);
    }
    if (!std::isfinite(rhos.back())) {
      throw std::invalid_argument("rho must be finite: " + token);
    }
  }
  if (rhos.empty()) {
    throw std::invalid_argument("empty rho list");
  }

  LoadedGraph loaded = load_graph(config);
  QueryRun query = find_query_mentions(loaded.graph, config);

  std::ostringstream csv;
  csv << "measure,rho,tp,fp,tn,fn,unknown,precision,accuracy,specificity,"
         "sensitivity,zero_tail_pairs,zero_tail_fn,kta_literal,auc\n";
  for (Measure measure : {Measure::cn, Measure::aa, Measure::pmi}) {
    auto scored = score_all_pairs(loaded.graph, query.mentions, measure,
                                  config.threads);
    if (!config.include_same_paper) {
      scored = drop_same_paper(std::move(scored));
    }
    for (double rho : rhos) {
      apply_threshold(scored, rho);
      auto report = evaluate_run(to_string(measure), rho,
                                 query.mentions.mentions, scored);
      csv << to_string(measure) << ',' << format_double(rho) << ','
          << report.counts.tp << ',' << report.counts.fp << ','
          << report.counts.tn << ',' << report.counts.fn << ','
          << report.counts.excluded_unknown << ','
          << metric_or_empty(report.metric_report.precision) << ','
          << metric_or_empty(report.metric_report.accuracy) << ','
          << metric_or_empty(report.metric_report.specificity) << ','
          << metric_or_empty(report.metric_report.sensitivity) << ','
          << report.metric_report.zero_tail_pair_count << ','
          << report.metric_report.zero_tail_fn_count << ','
          << metric_or_empty(report.ranking.kta_literal) << ','
          << metric_or_empty(report.ranking.auc) << '\n';
    }
  }

  fs::create_directories(config.output_dir);
  fs::path sweep_path = fs::path(config.output_dir) / "sweep.csv";
  write_file(sweep_path, csv.str());
  std::cout << "rows: " << 3 * rhos.size() << "\n";
  std::cout << "sweep: " << sweep_path.string() << "\n";
  return kExitOk;
}

int dispatch(int (*command)(const RunConfig&), const RunConfig& config) {
  try {
    return command(config);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const QueryError& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitQuery;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Author-name disambiguation over co-authorship graphs"};
  app.require_subcommand(1);

  RunConfig config;

  auto add_input_options = [&](CLI::App* cmd) {
    cmd->add_option("--input", config.input_path, "Input file")->required();
    cmd->add_option("--input-kind", config.input_kind,
                    "xml | fixture | snapshot | auto")
        ->check(CLI::IsMember({"xml", "fixture", "snapshot", "auto"}));
  };
  auto add_query_options = [&](CLI::App* cmd) {
    cmd->add_option("--query", config.query_name, "Ambiguous author name")
        ->required();
    cmd->add_flag("--case-insensitive", config.case_insensitive,
                  "Match the query name case-insensitively (ASCII)");
    cmd->add_option("--threads", config.threads,
                    "Worker threads for pair scoring (0 = hardware)");
    cmd->add_option("--include-same-paper", config.include_same_paper,
                    "Keep pairs whose mentions share one paper (default true)");
    cmd->add_option("--out", config.output_dir, "Output directory");
  };

  CLI::App* ingest = app.add_subcommand(
      "ingest", "Build a graph snapshot from DBLP XML or a fixture");
  add_input_options(ingest);
  ingest->add_option("--out", config.output_dir, "Output directory");

  CLI::App* stats = app.add_subcommand("stats", "Print graph statistics");
  add_input_options(stats);

  CLI::App* disambiguate = app.add_subcommand(
      "disambiguate", "Score and classify every mention pair of one name");
  add_input_options(disambiguate);
  add_query_options(disambiguate);
  disambiguate->add_option("--measure", config.measure, "cn | aa | pmi")
      ->check(CLI::IsMember({"cn", "aa", "pmi"}));
  disambiguate->add_option("--rho", config.rho,
                           "Decision threshold (default 0)");
  disambiguate->add_option("--format", config.report_formats,
                           "Report formats, comma-separated: json,csv");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate all measures across a list of thresholds");
  add_input_options(sweep);
  add_query_options(sweep);
  sweep->add_option("--rho-list", config.rho_list,
                    "Comma-separated thresholds")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (ingest->parsed()) return dispatch(cmd_ingest, config);
  if (stats->parsed()) return dispatch(cmd_stats, config);
  if (disambiguate->parsed()) return dispatch(cmd_disambiguate, config);
  if (sweep->parsed()) return dispatch(cmd_sweep, config);
  return kExitFailure;
}
