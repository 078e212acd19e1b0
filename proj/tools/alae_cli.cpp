#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "alae/analysis.hpp"
#include "alae/error.hpp"
#include "alae/fm_index.hpp"
#include "alae/search.hpp"
#include "alae/sequence.hpp"

namespace {

enum class Level { Error = 0, Info = 1, Debug = 2 };

Level log_level() {
  const char* env = std::getenv("ALAE_LOG");
  std::string v = env ? env : "info";
  if (v == "error") return Level::Error;
  if (v == "debug") return Level::Debug;
  return Level::Info;
}

void log(Level level, const std::string& msg) {
  static const Level current = log_level();
  if (level <= current) std::cerr << msg << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr int kDataError = 1;
constexpr int kUsageError = 2;
constexpr int kAlarm = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchArgs {
  std::string index;
  std::string query;
  std::string score = "1,-3,-5,-2";
  std::optional<int> threshold;
  std::optional<double> evalue;
  std::optional<double> karlin_k;
  std::optional<double> karlin_lambda;
  std::string mode = "alae";
  bool no_length = false;
  bool no_score = false;
  bool no_prefix = false;
  bool no_domination = false;
  bool gmatrix = false;
  bool no_reuse = false;
  bool no_path_sharing = false;
  bool stats = false;
  unsigned threads = 1;
};

void add_search_flags(CLI::App* cmd, SearchArgs& a, bool with_mode) {
  cmd->add_option("--index", a.index, "Index file from build-index")->required()->check(CLI::ExistingFile);
  cmd->add_option("--query", a.query, "Query FASTA")->required()->check(CLI::ExistingFile);
  cmd->add_option("--score", a.score, "Scoring scheme sa,sb,sg,ss");
  cmd->add_option("--threshold", a.threshold, "Score threshold H");
  cmd->add_option("--evalue", a.evalue, "Expectation value; needs --karlin-k and --karlin-lambda");
  cmd->add_option("--karlin-k", a.karlin_k, "Karlin-Altschul K");
  cmd->add_option("--karlin-lambda", a.karlin_lambda, "Karlin-Altschul lambda");
  if (with_mode) {
    cmd->add_option("--mode", a.mode, "alae, bwtsw or oracle")->check(CLI::IsMember({"alae", "bwtsw", "oracle"}));
    cmd->add_flag("--stats", a.stats, "Print counters to stderr");
  }
  cmd->add_flag("--no-length-filter", a.no_length);
  cmd->add_flag("--no-score-filter", a.no_score);
  cmd->add_flag("--no-prefix-filter", a.no_prefix);
  cmd->add_flag("--no-domination", a.no_domination);
  cmd->add_flag("--gmatrix", a.gmatrix, "Use the bit-matrix cross-check instead of domination");
  cmd->add_flag("--no-reuse", a.no_reuse);
  cmd->add_flag("--no-path-sharing", a.no_path_sharing);
  cmd->add_option("--threads", a.threads, "Worker threads")->check(CLI::PositiveNumber);
}

alae::SearchOptions options_of(const SearchArgs& a) {
  alae::SearchOptions o;
  o.mode = alae::parse_mode(a.mode);
  o.length_filter = !a.no_length;
  o.score_filter = !a.no_score;
  o.prefix_filter = !a.no_prefix;
  o.domination = !a.no_domination;
  o.gmatrix = a.gmatrix;
  o.reuse = !a.no_reuse;
  o.path_sharing = !a.no_path_sharing;
  o.threads = a.threads;
  return o;
}

void check_threshold_flags(const SearchArgs& a) {
  if (a.threshold && a.evalue) throw UsageError("give either --threshold or --evalue, not both");
  if (!a.threshold && !a.evalue) throw UsageError("one of --threshold or --evalue is required");
  if (a.evalue && (!a.karlin_k || !a.karlin_lambda)) {
    throw UsageError("--evalue needs --karlin-k and --karlin-lambda");
  }
}

alae::Score threshold_for(const SearchArgs& a, std::uint64_t m, std::uint64_t n) {
  if (a.threshold) return *a.threshold;
  return alae::threshold_from_evalue(*a.evalue, *a.karlin_k, *a.karlin_lambda, static_cast<double>(m),
                                     static_cast<double>(n));
}

struct Loaded {
  alae::FmIndex index;
  alae::EncodedText text;
  std::vector<alae::SequenceRecord> queries;
};

Loaded load_inputs(const SearchArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  Loaded in;
  in.index = alae::FmIndex::load(a.index);
  in.text = in.index.extract_text();
  in.queries = alae::read_fasta_file(a.query, alae::Alphabet::of(in.index.alphabet()), alae::SymbolPolicy::Lenient);
  log(Level::Info, "loaded index n=" + std::to_string(in.index.text_size()) + " in " +
                       std::to_string(seconds_since(t0)) + "s");
  return in;
}

int cmd_build(const std::string& input, const std::string& alphabet, const std::string& output, bool lenient) {
  auto t0 = std::chrono::steady_clock::now();
  auto kind = alae::Alphabet::parse_kind(alphabet);
  auto records = alae::read_fasta_file(input, alae::Alphabet::of(kind),
                                       lenient ? alae::SymbolPolicy::Lenient : alae::SymbolPolicy::Strict);
  auto text = alae::concatenate(records, kind);
  auto index = alae::FmIndex::build(text);
  index.save(output);
  std::cout << "n=" << text.size() << "\nrecords=" << text.boundaries().size() << '\n';
  log(Level::Info, "build_seconds=" + std::to_string(seconds_since(t0)));
  return 0;
}

int cmd_search(const SearchArgs& a) {
  check_threshold_flags(a);
  auto scheme = alae::ScoringScheme::parse(a.score);
  auto opts = options_of(a);
  auto in = load_inputs(a);
  alae::Counters total;
  for (const auto& rec : in.queries) {
    alae::Query query{rec.id, rec.codes};
    auto h = threshold_for(a, query.codes.size(), in.index.text_size());
    log(Level::Debug, "query " + rec.id + " m=" + std::to_string(query.codes.size()) + " H=" + std::to_string(h));
    auto t0 = std::chrono::steady_clock::now();
    auto res = alae::search(in.index, in.text, query, scheme, h, opts);
    log(Level::Info, "search_seconds=" + std::to_string(seconds_since(t0)) + " query=" + rec.id);
    std::cout << alae::format_hits_tsv(in.text, rec.id, res.hits);
    if (a.stats && opts.mode == alae::SearchMode::Alae) {
      auto base_opts = opts;
      base_opts.mode = alae::SearchMode::Bwtsw;
      res.counters.baseline_calculated = alae::search(in.index, in.text, query, scheme, h, base_opts).counters.calculated;
    }
    total += res.counters;
  }
  if (a.stats) {
    std::cerr << "calculated=" << total.calculated << "\nreused=" << total.reused << "\naccessed=" << total.accessed()
              << '\n';
    if (total.baseline_calculated > 0) {
      std::cerr << "filtering_ratio=" << alae::ratios(total).filtering << '\n';
    } else {
      std::cerr << "filtering_ratio=na\n";
    }
    std::cerr << "reusing_ratio=" << alae::reusing_ratio(total) << "\nweighted_cost=" << total.weighted_cost
              << "\npruned_forks=" << total.pruned_forks << "\ndominated_forks=" << total.dominated_forks << '\n';
  }
  return 0;
}

int cmd_compare(const SearchArgs& a) {
  check_threshold_flags(a);
  auto scheme = alae::ScoringScheme::parse(a.score);
  auto in = load_inputs(a);
  int status = 0;
  for (const auto& rec : in.queries) {
    alae::Query query{rec.id, rec.codes};
    auto h = threshold_for(a, query.codes.size(), in.index.text_size());
    auto opts = options_of(a);
    opts.mode = alae::SearchMode::Bwtsw;
    auto t0 = std::chrono::steady_clock::now();
    auto base = alae::search(in.index, in.text, query, scheme, h, opts);
    log(Level::Info, "bwtsw_seconds=" + std::to_string(seconds_since(t0)));
    opts.mode = alae::SearchMode::Alae;
    t0 = std::chrono::steady_clock::now();
    auto fast = alae::search(in.index, in.text, query, scheme, h, opts);
    log(Level::Info, "alae_seconds=" + std::to_string(seconds_since(t0)));
    auto c = fast.counters;
    c.baseline_calculated = base.counters.calculated;
    auto r = alae::ratios(c);
    bool same = base.hits.size() == fast.hits.size();
    for (std::size_t i = 0; same && i < base.hits.size(); ++i) {
      same = base.hits[i].end_t == fast.hits[i].end_t && base.hits[i].end_p == fast.hits[i].end_p &&
             base.hits[i].score == fast.hits[i].score;
    }
    std::cout << "query=" << rec.id << "\nthreshold=" << h << "\nbwtsw_calculated=" << base.counters.calculated
              << "\nalae_calculated=" << c.calculated << "\nalae_reused=" << c.reused
              << "\nalae_accessed=" << c.accessed() << "\nbwtsw_weighted_cost=" << base.counters.weighted_cost
              << "\nalae_weighted_cost=" << c.weighted_cost << "\nfiltering_ratio=" << r.filtering
              << "\nreusing_ratio=" << r.reusing << "\nhits=" << fast.hits.size()
              << "\nhit_sets=" << (same ? "equal" : "DIFFERENT") << '\n';
    if (!same) {
      std::cerr << "HitSetMismatch: bwtsw reported " << base.hits.size() << " hits, alae " << fast.hits.size()
                << " for query " << rec.id << '\n';
      status = kAlarm;
    }
  }
  return status;
}

int cmd_analyze(const std::string& score, int sigma) {
  auto scheme = alae::ScoringScheme::parse(score);
  auto p = alae::analysis_params(scheme, sigma);
  auto b = alae::entry_bound(scheme, sigma);
  std::printf("s=%.4f\nq=%d\nk1=%.4f\nk2=%.4f\ncoefficient=%.4f\nexponent=%.4f\n", p.s, p.q, p.k1, p.k2,
              b.coefficient, b.exponent);
  std::printf("bound=%.2f \xC2\xB7 m \xC2\xB7 n^%.4f\n", b.coefficient, b.exponent);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local alignment search over an FM-index"};
  app.require_subcommand(1);

  std::string input, alphabet = "dna", output;
  bool lenient = false;
  auto* build = app.add_subcommand("build-index", "Index a FASTA database");
  build->add_option("--input", input, "FASTA database")->required()->check(CLI::ExistingFile);
  build->add_option("--alphabet", alphabet, "dna or protein")->check(CLI::IsMember({"dna", "protein"}));
  build->add_option("--output", output, "Index file to write")->required();
  build->add_flag("--lenient", lenient, "Map unknown letters to a never-matching code");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Report every end pair scoring at least H");
  add_search_flags(search, search_args, true);

  SearchArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Run the baseline and ALAE and compare their work");
  add_search_flags(compare, compare_args, false);

  std::string score = "1,-3,-5,-2";
  int sigma = 4;
  auto* analyze = app.add_subcommand("analyze", "Expected calculated-entry bound");
  analyze->add_option("--score", score, "Scoring scheme sa,sb,sg,ss");
  analyze->add_option("--sigma", sigma, "Alphabet size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*build) return cmd_build(input, alphabet, output, lenient);
    if (*search) return cmd_search(search_args);
    if (*compare) return cmd_compare(compare_args);
    if (*analyze) return cmd_analyze(score, sigma);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const alae::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == alae::Errc::HitSetMismatch ? kAlarm : kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
