// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits non-zero when any criterion fails. Thresholds and tolerances are
// pinned in code next to each check.

#include <sys/resource.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coref/disambiguator.hpp"
#include "coref/evaluation.hpp"
#include "coref/graph.hpp"
#include "coref/ingest.hpp"
#include "coref/io.hpp"
#include "coref/similarity.hpp"
#include "support/benchmark.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace coref;
using namespace coref::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct CriterionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& detail) {
  if (!condition) throw CriterionFailure(detail);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path work_dir() {
  fs::path dir = fs::current_path() / "acceptance_tmp";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// 1. Graph core vs brute-force oracles: 200 random bipartite graphs.

void criterion_graph_oracles() {
  auto start = Clock::now();
  Rng rng(11021);
  for (int round = 0; round < 200; ++round) {
    std::vector<PaperRecord> records = random_records(rng, 12, 8);
    BipartiteGraph g = make_graph(records);
    ModelGraph model = model_from_records(records);
    require(g.author_count() <= 12 && g.paper_count() <= 8,
            "generator out of bounds");

    for (PaperId p1 = 0; p1 < g.paper_count(); ++p1) {
      for (PaperId p2 = p1; p2 < g.paper_count(); ++p2) {
        std::set<std::uint32_t> model_exclude;
        std::vector<std::uint32_t> ids;
        auto row = g.authors_of(p1);
        if (!row.empty() && rng.below(2) == 0) {
          std::uint32_t pick =
              row[rng.below(static_cast<std::uint32_t>(row.size()))];
          model_exclude.insert(pick);
          ids.push_back(pick);
        }
        auto got = common_neighbors(g, p1, p2, NodeSet(ids));
        auto expected = oracle_common_neighbors(model, p1, p2, model_exclude);
        require(got == expected, "common_neighbors mismatch in round " +
                                     std::to_string(round));
      }
    }
    for (AuthorId a1 = 0; a1 < g.author_count(); ++a1) {
      for (AuthorId a2 = a1 + 1; a2 < g.author_count(); ++a2) {
        require(bounded_path_count(g, a1, a2) ==
                    oracle_path_count(model, a1, a2, 2),
                "bounded_path_count mismatch in round " +
                    std::to_string(round));
      }
    }
  }
  double elapsed = seconds_since(start);
  require(elapsed < 10.0,
          "runtime " + std::to_string(elapsed) + "s exceeds the 10s budget");
}

// ---------------------------------------------------------------------------
// 2. Measure arithmetic on 1,000 random paper pairs.

void criterion_measure_arithmetic() {
  Rng rng(22022);
  int checked = 0;
  while (checked < 1000) {
    std::vector<PaperRecord> records = random_records(rng, 12, 8);
    BipartiteGraph g = make_graph(records);
    ModelGraph model = model_from_records(records);
    std::uint32_t paper_count = static_cast<std::uint32_t>(g.paper_count());
    for (int draws = 0; draws < 10 && checked < 1000; ++draws) {
      PaperId p1 = rng.below(paper_count);
      PaperId p2 = rng.below(paper_count);
      std::set<std::uint32_t> none;
      NodeSet empty;

      auto aa = aa_score(g, p1, p2, empty);
      auto aa_ref = oracle_aa(model, p1, p2, none);
      require(std::abs(aa.value - aa_ref.value) < 1e-9,
              "aa differs from the direct formula by more than 1e-9");

      auto pmi = pmi_score(g, p1, p2, empty);
      auto pmi_ref = oracle_pmi(model, p1, p2, none);
      require(pmi.zero_tail == pmi_ref.zero_tail, "pmi zero-tail mismatch");
      if (pmi.zero_tail) {
        // Sign identity holds trivially: C = 0 on both sides.
        require(!(pmi.value > 0.0), "zero-tail sentinel compares positive");
      }
      if (!pmi.zero_tail) {
        require(std::abs(pmi.value - pmi_ref.value) < 1e-9,
                "pmi differs from the direct formula by more than 1e-9");
        std::uint64_t c =
            oracle_common_neighbors(model, p1, p2, none).size();
        std::uint64_t g1 = model.paper_authors[p1].size();
        std::uint64_t g2 = model.paper_authors[p2].size();
        bool expected_positive = c * model.author_count > g1 * g2;
        require((pmi.value > 0.0) == expected_positive,
                "pmi sign identity violated");
      }
      ++checked;
    }
  }
}

// ---------------------------------------------------------------------------
// 3. Literal rank-quality score on every permutation for n_pot <= 6.

void criterion_kta_permutations() {
  for (std::uint32_t n_pot = 1; n_pot <= 6; ++n_pot) {
    std::vector<std::uint32_t> ranks(n_pot);
    std::iota(ranks.begin(), ranks.end(), 1);
    std::size_t permutations = 0;
    do {
      ++permutations;
      for (std::uint32_t n_new = 0; n_new + 1 < n_pot; ++n_new) {
        auto got = kta_literal(n_new, n_pot, ranks);
        auto expected = oracle_kta(n_new, n_pot, ranks);
        require(got.has_value() && expected.has_value(),
                "normalizer unexpectedly undefined");
        require(*got == *expected, "kta mismatch at n_pot " +
                                       std::to_string(n_pot));
      }
      // The degenerate normalizer must be the undefined marker.
      if (n_pot >= 1) {
        require(!kta_literal(n_pot - 1, n_pot, ranks).has_value(),
                "degenerate normalizer must be undefined");
      }
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    require(permutations <= 720, "permutation count overflow");
  }
}

// ---------------------------------------------------------------------------
// 4. Zero-tail pairs never classify positive at rho >= 0.

void criterion_zero_tail_theorem() {
  BenchmarkSpec spec;
  auto records = generate_benchmark(spec);
  BipartiteGraph g = make_graph(records);
  MentionSet ms = find_mentions(g, spec.query);
  require(ms.mentions.size() >= 2, "benchmark has too few mentions");

  std::uint64_t zero_tail_seen = 0;
  for (Measure measure : {Measure::cn, Measure::aa, Measure::pmi}) {
    auto scored = score_all_pairs(g, ms, measure);
    for (double rho : {0.0, 0.4, 2.5}) {
      apply_threshold(scored, rho);
      for (const CandidatePair& pair : scored) {
        if (pair.score.zero_tail) {
          ++zero_tail_seen;
          require(!*pair.predicted_same,
                  "zero-tail pair classified positive at rho " +
                      std::to_string(rho));
          GroundTruthLabel truth =
              ground_truth(ms.mentions[pair.a], ms.mentions[pair.b]);
          const char* cell = classification_label(truth, *pair.predicted_same);
          require(std::string(cell) == "TN" || std::string(cell) == "FN" ||
                      std::string(cell) == "UNK",
                  "zero-tail pair landed outside the negative cells");
        }
      }
    }
  }
  require(zero_tail_seen > 0, "benchmark produced no zero-tail pairs");
}

// ---------------------------------------------------------------------------
// 5. Synthetic homonym benchmark quality floors.

void criterion_benchmark_quality() {
  auto start = Clock::now();
  BenchmarkSpec spec;
  auto records = generate_benchmark(spec);
  BipartiteGraph g = make_graph(records);
  MentionSet ms = find_mentions(g, spec.query);

  auto metrics_for = [&](Measure measure) {
    auto pairs = run_all_pairs(g, ms, measure, 0.0);
    auto cm = confusion(ms.mentions, pairs);
    return metrics(cm);
  };

  for (Measure measure : {Measure::cn, Measure::aa}) {
    auto report = metrics_for(measure);
    require(report.specificity.has_value() && report.precision.has_value(),
            std::string(to_string(measure)) + " metrics undefined");
    require(*report.specificity >= 0.95,
            std::string(to_string(measure)) + " specificity " +
                format_double(*report.specificity) + " below 0.95");
    require(*report.precision >= 0.90,
            std::string(to_string(measure)) + " precision " +
                format_double(*report.precision) + " below 0.90");
  }
  auto pmi_report = metrics_for(Measure::pmi);
  require(pmi_report.precision.has_value(), "pmi precision undefined");
  require(*pmi_report.precision >= 0.60,
          "pmi precision " + format_double(*pmi_report.precision) +
              " below 0.60");

  double elapsed = seconds_since(start);
  require(elapsed < 60.0,
          "runtime " + std::to_string(elapsed) + "s exceeds the 60s budget");
}

// ---------------------------------------------------------------------------
// 6. The same-paper error pathway, isolated.

void criterion_same_paper_pathway() {
  std::vector<PaperRecord> records = {
      rec("acc/p0", {"Chen Wei 0001", "Chen Wei 0002", "Zhang San"}, "Shared"),
      rec("acc/p1", {"Chen Wei 0001", "Alice A", "Bob B"}, "Solo A"),
      rec("acc/p2", {"Chen Wei 0002", "Carol C", "Dave D"}, "Solo B"),
  };
  BipartiteGraph g = make_graph(records);
  MentionSet ms = find_mentions(g, "Chen Wei");
  require(ms.mentions.size() == 4, "fixture should yield 4 mentions");

  auto pairs = run_all_pairs(g, ms, Measure::cn, 0.0);
  auto cm = confusion(ms.mentions, pairs);
  require(cm.fp == 1, "expected exactly one false positive, got " +
                          std::to_string(cm.fp));

  // The offending pair must be the same-paper one.
  for (const CandidatePair& pair : pairs) {
    GroundTruthLabel truth =
        ground_truth(ms.mentions[pair.a], ms.mentions[pair.b]);
    bool is_fp = *pair.predicted_same && truth == GroundTruthLabel::different;
    if (is_fp) require(pair.same_paper, "the FP is not the same-paper pair");
  }

  std::vector<CandidatePair> filtered;
  for (const CandidatePair& pair : pairs) {
    if (!pair.same_paper) filtered.push_back(pair);
  }
  auto filtered_cm = confusion(ms.mentions, filtered);
  require(filtered_cm.fp == 0,
          "false positives remain after dropping same-paper pairs");
}

// ---------------------------------------------------------------------------
// 7. Ingestion at scale plus the entity-decoding golden file.

void write_million_record_xml(const fs::path& path) {
  std::FILE* out = std::fopen(path.string().c_str(), "wb");
  require(out != nullptr, "cannot open " + path.string());
  std::string buffer;
  buffer.reserve(1 << 20);
  buffer += "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?>\n";
  buffer += "<!DOCTYPE dblp SYSTEM \"dblp.dtd\">\n<dblp>\n";
  Rng rng(77077);
  for (int i = 0; i < 1000000; ++i) {
    buffer += "<article key=\"gen/rec";
    buffer += std::to_string(i);
    buffer += "\" mdate=\"2020-01-01\">";
    int n_authors = 2 + static_cast<int>(rng.below(3));
    for (int a = 0; a < n_authors; ++a) {
      buffer += "<author>Auth N";
      buffer += std::to_string(rng.below(200000));
      if (a == 0 && i % 17 == 0) {
        buffer += " M&uuml;ll&eacute;r";
      }
      buffer += "</author>";
    }
    buffer += "<title>Generated study ";
    buffer += std::to_string(i);
    buffer += "</title><year>";
    buffer += std::to_string(1990 + rng.below(30));
    buffer += "</year><ee>https://example.org/";
    buffer += std::to_string(i);
    buffer += "</ee></article>\n";
    if (buffer.size() > (1 << 20) - 1024) {
      std::fwrite(buffer.data(), 1, buffer.size(), out);
      buffer.clear();
    }
  }
  buffer += "</dblp>\n";
  std::fwrite(buffer.data(), 1, buffer.size(), out);
  std::fclose(out);
}

std::size_t peak_rss_bytes() {
  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::size_t>(usage.ru_maxrss) * 1024;  // KiB on Linux
}

void criterion_ingestion() {
  // Entity decoding against the golden file.
  {
    std::ifstream golden(fs::path(COREF_TEST_DATA_DIR) / "entity_golden.tsv");
    require(golden.good(), "missing entity golden file");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(golden, line)) {
      auto tab = line.find('\t');
      require(tab != std::string::npos, "bad golden row");
      std::string encoded = line.substr(0, tab);
      std::string expected = line.substr(tab + 1);
      std::string xml = "<dblp><article key=\"k/1\"><author>" + encoded +
                        "</author><title>T</title></article></dblp>";
      auto reader = parse_stream(make_memory_reader(xml));
      auto record = reader->next();
      require(record.has_value(), "golden record did not parse");
      require(record->authors.size() == 1, "golden record author count");
      require(record->authors[0] == expected,
              "entity decode mismatch for: " + encoded);
      ++rows;
    }
    require(rows == 50, "golden file must hold 50 names");
  }

  // Bulk parse: 1,000,000 records under the memory and throughput floors.
  fs::path dir = work_dir();
  fs::path xml_path = dir / "generated_million.xml";
  write_million_record_xml(xml_path);
  double megabytes =
      static_cast<double>(fs::file_size(xml_path)) / (1024.0 * 1024.0);

  auto start = Clock::now();
  auto reader = parse_stream(open_input(xml_path));
  std::uint64_t seen = 0;
  std::uint64_t author_mentions = 0;
  while (auto record = reader->next()) {
    ++seen;
    author_mentions += record->authors.size();
  }
  double elapsed = seconds_since(start);

  require(seen == 1000000, "expected 1,000,000 records, got " +
                               std::to_string(seen));
  require(author_mentions > 2000000, "author volume implausibly low");

  double throughput = megabytes / elapsed;
  require(throughput >= 50.0,
          "throughput " + format_double(throughput) + " MB/s below 50 MB/s");

  std::size_t rss = peak_rss_bytes();
  require(rss < 256ull * 1024 * 1024,
          "peak RSS " + std::to_string(rss / (1024 * 1024)) +
              " MiB exceeds 256 MiB");

  std::cout << "       [ingest: " << format_double(megabytes) << " MB in "
            << format_double(elapsed) << "s = " << format_double(throughput)
            << " MB/s, peak RSS " << rss / (1024 * 1024) << " MiB]\n";
  fs::remove(xml_path);
}

// ---------------------------------------------------------------------------
// 8. Metric identities on 10,000 random confusion matrices.

void criterion_metric_identities() {
  Rng rng(88088);
  for (int i = 0; i < 10000; ++i) {
    ConfusionMatrix cm;
    // Mix in forced zero denominators.
    switch (rng.below(5)) {
      case 0: cm = {0, 0, rng.below(1000000), 0, 0}; break;
      case 1: cm = {rng.below(1000000), 0, 0, 0, 0}; break;
      default:
        cm = {rng.below(1000000), rng.below(1000000), rng.below(1000000),
              rng.below(1000000), 0};
    }
    auto report = metrics(cm);

    if (cm.tp + cm.fn == 0) {
      require(!report.sensitivity.has_value(),
              "sensitivity must be undefined on a zero denominator");
    } else {
      require(report.sensitivity.has_value(), "sensitivity missing");
      double lhs = *report.sensitivity * static_cast<double>(cm.tp + cm.fn);
      require(std::abs(lhs - static_cast<double>(cm.tp)) <=
                  1e-12 * std::max(1.0, static_cast<double>(cm.tp)),
              "sensitivity identity violated");
    }
    if (cm.tn + cm.fp == 0) {
      require(!report.specificity.has_value(),
              "specificity must be undefined on a zero denominator");
    } else {
      require(report.specificity.has_value(), "specificity missing");
      double lhs = *report.specificity * static_cast<double>(cm.tn + cm.fp);
      require(std::abs(lhs - static_cast<double>(cm.tn)) <=
                  1e-12 * std::max(1.0, static_cast<double>(cm.tn)),
              "specificity identity violated");
    }
    require(report.precision.has_value() == (cm.tp + cm.fp > 0),
            "precision defined-ness wrong");
    require(report.accuracy.has_value() == (cm.evaluated() > 0),
            "accuracy defined-ness wrong");
  }
}

// ---------------------------------------------------------------------------
// 9. CLI determinism across thread counts.

int run_cli(const std::string& args, const fs::path& dir,
            const std::string& tag) {
  std::string command = std::string(COREF_CLI_PATH) + " " + args + " > " +
                        (dir / (tag + ".out")).string() + " 2> " +
                        (dir / (tag + ".err")).string();
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_cli_determinism() {
  fs::path dir = work_dir();
  BenchmarkSpec spec;
  auto records = generate_benchmark(spec);
  fs::path fixture = dir / "bench.tsv";
  {
    std::ofstream out(fixture, std::ios::binary);
    write_fixture(records, out);
  }

  auto run_with_threads = [&](const std::string& tag, unsigned threads) {
    fs::path out_dir = dir / tag;
    fs::remove_all(out_dir);
    int code = run_cli("disambiguate --input " + fixture.string() +
                           " --query 'Wei Chen' --measure cn --rho 0" +
                           " --threads " + std::to_string(threads) +
                           " --out " + out_dir.string(),
                       dir, tag);
    require(code == 0, "cli run '" + tag + "' exited " + std::to_string(code));
    return out_dir;
  };

  fs::path first = run_with_threads("threads1", 1);
  fs::path second = run_with_threads("threads8", 8);
  fs::path third = run_with_threads("threads8_again", 8);

  for (const char* file : {"report.json", "pairs.csv", "clusters.csv"}) {
    std::string a = slurp(first / file);
    std::string b = slurp(second / file);
    std::string c = slurp(third / file);
    require(!a.empty(), std::string(file) + " is empty");
    require(a == b, std::string(file) + " differs between 1 and 8 threads");
    require(b == c, std::string(file) + " differs between identical runs");
  }
}

struct Criterion {
  std::string label;
  std::function<void()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"graph core matches brute-force oracles (200 random graphs, <10s)",
       criterion_graph_oracles},
      {"aa/pmi match direct formulas to 1e-9; pmi sign identity exact",
       criterion_measure_arithmetic},
      {"rank-quality literal matches the oracle on all permutations, n<=6",
       criterion_kta_permutations},
      {"no zero-tail pair classifies positive at rho >= 0",
       criterion_zero_tail_theorem},
      {"benchmark floors: cn/aa spec>=0.95 prec>=0.90, pmi prec>=0.60 (<60s)",
       criterion_benchmark_quality},
      {"same-paper pathway: exactly one FP, zero after exclusion",
       criterion_same_paper_pathway},
      {"ingestion: 1M records, <256 MiB, >=50 MB/s, 50-name entity golden",
       criterion_ingestion},
      {"metric identities on 10,000 random confusion matrices",
       criterion_metric_identities},
      {"cli reports byte-identical across --threads 1 and --threads 8",
       criterion_cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    try {
      criteria[i].run();
      std::cout << "PASS  " << (i + 1) << ". " << criteria[i].label << "  ["
                << format_double(seconds_since(start)) << "s]\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL  " << (i + 1) << ". " << criteria[i].label << ": "
                << e.what() << "\n";
    }
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) +
                                    " criterion(s) failed")
            << "\n";
  fs::remove_all(fs::current_path() / "acceptance_tmp");
  return failures == 0 ? 0 : 1;
}
