#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <tuple>

#include "alae/analysis.hpp"
#include "alae/dp_core.hpp"
#include "alae/error.hpp"
#include "alae/fm_index.hpp"
#include "alae/scoring.hpp"
#include "alae/search.hpp"
#include "alae/sequence.hpp"

namespace py = pybind11;

namespace {

using SchemeTuple = std::tuple<int, int, int, int>;

alae::ScoringScheme scheme_of(const SchemeTuple& t) {
  alae::ScoringScheme s{std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
  s.validate();
  return s;
}

class Database {
 public:
  Database(alae::FmIndex index, alae::EncodedText text) : index_(std::move(index)), text_(std::move(text)) {}

  static Database from_fasta(const std::string& fasta, const std::string& alphabet, bool lenient) {
    auto kind = alae::Alphabet::parse_kind(alphabet);
    auto records = alae::parse_fasta(std::string_view(fasta), alae::Alphabet::of(kind),
                                     lenient ? alae::SymbolPolicy::Lenient : alae::SymbolPolicy::Strict);
    auto text = alae::concatenate(records, kind);
    auto index = alae::FmIndex::build(text);
    return Database(std::move(index), std::move(text));
  }

  static Database load(const std::string& path) {
    auto index = alae::FmIndex::load(path);
    auto text = index.extract_text();
    return Database(std::move(index), std::move(text));
  }

  void save(const std::string& path) const { index_.save(path); }
  std::uint64_t size() const { return text_.size(); }
  std::string alphabet() const { return text_.alphabet() == alae::AlphabetKind::Dna ? "dna" : "protein"; }

  std::vector<std::string> records() const {
    std::vector<std::string> ids;
    for (const auto& b : text_.boundaries()) ids.push_back(b.id);
    return ids;
  }

  std::vector<alae::Code> encode(const std::string& s) const {
    return alae::Alphabet::of(text_.alphabet()).encode_string(s);
  }

  std::uint64_t count(const std::string& pattern) const { return index_.count(encode(pattern)); }

  // (record id, 1-based offset in the record), sorted.
  std::vector<std::pair<std::string, std::uint64_t>> locate(const std::string& pattern) const {
    auto codes = encode(pattern);
    auto starts = index_.locate(index_.find(codes), codes.size());
    std::sort(starts.begin(), starts.end());
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (auto p : starts) {
      auto local = text_.resolve(p);
      out.emplace_back(std::string(local.id), local.offset);
    }
    return out;
  }

  py::dict search(const std::string& query, int threshold, const SchemeTuple& scheme, const std::string& mode,
                  bool length_filter, bool score_filter, bool prefix_filter, bool domination, bool gmatrix,
                  bool reuse, bool path_sharing, unsigned threads) const {
    alae::SearchOptions o;
    o.mode = alae::parse_mode(mode);
    o.length_filter = length_filter;
    o.score_filter = score_filter;
    o.prefix_filter = prefix_filter;
    o.domination = domination;
    o.gmatrix = gmatrix;
    o.reuse = reuse;
    o.path_sharing = path_sharing;
    o.threads = threads;
    auto s = scheme_of(scheme);
    alae::Query q{"query", encode(query)};
    alae::SearchResult res;
    {
      py::gil_scoped_release release;
      res = alae::search(index_, text_, q, s, threshold, o);
    }
    py::list hits;
    for (const auto& h : res.hits) {
      auto start = text_.resolve(h.start_t);
      auto end = text_.resolve(h.end_t);
      hits.append(py::make_tuple(std::string(start.id), start.offset, end.offset, h.end_p, h.score));
    }
    const auto& c = res.counters;
    py::dict counters;
    counters["calculated"] = c.calculated;
    counters["reused"] = c.reused;
    counters["accessed"] = c.accessed();
    counters["weighted_cost"] = c.weighted_cost;
    counters["pruned_forks"] = c.pruned_forks;
    counters["dominated_forks"] = c.dominated_forks;
    counters["gmatrix_skipped_forks"] = c.gmatrix_skipped_forks;
    counters["reusing_ratio"] = alae::reusing_ratio(c);
    py::dict out;
    out["hits"] = hits;
    out["counters"] = counters;
    return out;
  }

 private:
  alae::FmIndex index_;
  alae::EncodedText text_;
};

}  // namespace

PYBIND11_MODULE(_alae, m) {
  m.doc() = "Exact local alignment search over an FM-index";

  // Kept alive for the life of the process; the module owns another reference.
  static PyObject* error_type = py::exception<alae::Error>(m, "AlaeError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const alae::Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("code") = std::string(alae::errc_name(e.code()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  const SchemeTuple default_scheme{1, -3, -5, -2};

  py::class_<Database>(m, "Database")
      .def_static("from_fasta", &Database::from_fasta, py::arg("fasta"), py::arg("alphabet") = "dna",
                  py::arg("lenient") = false, "Index the records of a FASTA string")
      .def_static("load", &Database::load, py::arg("path"))
      .def("save", &Database::save, py::arg("path"))
      .def_property_readonly("size", &Database::size)
      .def_property_readonly("alphabet", &Database::alphabet)
      .def_property_readonly("records", &Database::records)
      .def("count", &Database::count, py::arg("pattern"))
      .def("locate", &Database::locate, py::arg("pattern"))
      .def("search", &Database::search, py::arg("query"), py::arg("threshold"), py::arg("scheme") = default_scheme,
           py::arg("mode") = "alae", py::arg("length_filter") = true, py::arg("score_filter") = true,
           py::arg("prefix_filter") = true, py::arg("domination") = true, py::arg("gmatrix") = false,
           py::arg("reuse") = true, py::arg("path_sharing") = true, py::arg("threads") = 1,
           "Hits as (record, start, end, end_p, score) plus a counter dict");

  m.def(
      "q_value", [](const SchemeTuple& s) { return alae::q_value(scheme_of(s)); }, py::arg("scheme") = default_scheme);
  m.def(
      "length_bounds",
      [](const SchemeTuple& s, std::uint64_t m, int h) {
        auto b = alae::length_bounds(scheme_of(s), m, h);
        return std::make_pair(b.min_len, b.max_len);
      },
      py::arg("scheme"), py::arg("m"), py::arg("threshold"));
  m.def(
      "entry_bound",
      [](const SchemeTuple& s, int sigma) {
        auto b = alae::entry_bound(scheme_of(s), sigma);
        return std::make_pair(b.coefficient, b.exponent);
      },
      py::arg("scheme"), py::arg("sigma"));
  m.def(
      "analysis_params",
      [](const SchemeTuple& s, int sigma) {
        auto a = alae::analysis_params(scheme_of(s), sigma);
        py::dict d;
        d["s"] = a.s;
        d["q"] = a.q;
        d["sigma"] = a.sigma;
        d["k1"] = a.k1;
        d["k2"] = a.k2;
        return d;
      },
      py::arg("scheme"), py::arg("sigma"));
  m.def("threshold_from_evalue", &alae::threshold_from_evalue, py::arg("evalue"), py::arg("karlin_k"),
        py::arg("karlin_lambda"), py::arg("m"), py::arg("n"));
  m.def(
      "oracle_search",
      [](const std::string& text, const std::string& query, int threshold, const SchemeTuple& s,
         const std::string& alphabet) {
        const auto& a = alae::Alphabet::of(alae::Alphabet::parse_kind(alphabet));
        auto hits = alae::oracle_search(a.encode_string(text), a.encode_string(query), scheme_of(s), threshold);
        std::vector<std::tuple<std::uint64_t, std::uint32_t, int, std::uint64_t>> out;
        for (const auto& h : hits) out.emplace_back(h.end_t, h.end_p, h.score, h.start_t);
        return out;
      },
      py::arg("text"), py::arg("query"), py::arg("threshold"), py::arg("scheme") = default_scheme,
      py::arg("alphabet") = "dna", "Full-DP reference: (end_t, end_p, score, start_t) tuples");
}
