#include "logometre/cli.hpp"
#include "logometre/error.hpp"
#include "logometre/hypergeometric.hpp"
#include "logometre/report.hpp"
#include "logometre/text.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace logometre;

namespace {

// Results cross the boundary as plain Python containers built from the same
// JSON the CLI prints, so both surfaces share one serialization.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(dump_json(j)); }

Json from_py(const py::object& o) {
  return parse_json(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

SubCorpus select(const AnnotatedCorpus& c, const std::string& selector) {
  return selector.empty() ? whole(c) : partition(c, parse_selector(selector));
}

DenseMatrix dense_from(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols) throw Error(errors::kInvalidArgument, "ragged count matrix");
    m.data.insert(m.data.end(), r.begin(), r.end());
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Logometric comparison of non-aligned bilingual corpora";

  static py::exception<Error> error_type(m, "LogometreError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto cls = py::reinterpret_borrow<py::object>(error_type);
      py::object inst = cls(e.kind() + ": " + e.what());
      inst.attr("kind") = e.kind();
      inst.attr("line") = e.line() ? py::cast(*e.line()) : py::none();
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<AnnotatedCorpus>(m, "Corpus")
      .def_property_readonly("language", &AnnotatedCorpus::language)
      .def_property_readonly("tagset", &AnnotatedCorpus::tagset)
      .def_property_readonly("token_count", &AnnotatedCorpus::token_count)
      .def_property_readonly("sentence_count", &AnnotatedCorpus::sentence_count)
      .def_property_readonly("document_ids",
                             [](const AnnotatedCorpus& c) {
                               std::vector<std::string> ids;
                               for (const auto& d : c.documents()) ids.push_back(d.id);
                               return ids;
                             })
      .def("hash", [](const AnnotatedCorpus& c) { return corpus_hash(c); })
      .def("serialize", [](const AnnotatedCorpus& c) { return serialize_corpus(c); })
      .def("__len__", [](const AnnotatedCorpus& c) { return c.documents().size(); })
      .def("__repr__", [](const AnnotatedCorpus& c) {
        return "<Corpus lang=" + c.language() + " documents=" + std::to_string(c.documents().size()) +
               " tokens=" + std::to_string(c.token_count()) + ">";
      });

  py::class_<BilingualLexicon>(m, "Lexicon")
      .def_property_readonly("lang_a", &BilingualLexicon::lang_a)
      .def_property_readonly("lang_b", &BilingualLexicon::lang_b)
      .def_property_readonly("id", &BilingualLexicon::id)
      .def("translate", &BilingualLexicon::translate, py::arg("lemma"))
      .def("__len__", &BilingualLexicon::size)
      .def_static("identity", &BilingualLexicon::identity, py::arg("language") = "");

  m.def("load_corpus", [](const std::string& path) { return load_corpus(path); }, py::arg("path"));
  m.def("parse_corpus", [](const std::string& text) { return parse_corpus_string(text); }, py::arg("text"));
  m.def("load_lexicon", &load_lexicon, py::arg("path"));
  m.def("parse_lexicon", [](const std::string& text) { return parse_lexicon(text); }, py::arg("text"));
  m.def("normalize_lemma", [](const std::string& s) { return normalize_lemma(s); }, py::arg("text"));

  m.def(
      "dictionary",
      [](const AnnotatedCorpus& c, const std::string& selector, const std::string& pos, std::size_t top,
         std::size_t workers) {
        return to_py(to_json(build_dictionary(select(c, selector), PosFilter::parse(pos), workers), top));
      },
      py::arg("corpus"), py::arg("select") = "", py::arg("pos") = "NOUN,PROPN", py::arg("top") = 0,
      py::arg("workers") = 1);

  m.def(
      "compare",
      [](const AnnotatedCorpus& a, const AnnotatedCorpus& b, const BilingualLexicon& lex, std::size_t k,
         const std::string& pos) {
        const auto filter = PosFilter::parse(pos);
        return to_py(to_json(compare_ranks(build_dictionary(whole(a), filter), build_dictionary(whole(b), filter), lex, k)));
      },
      py::arg("corpus_a"), py::arg("corpus_b"), py::arg("lexicon"), py::arg("k") = 20, py::arg("pos") = "NOUN,PROPN");

  m.def("specificity_log10p", &specificity_log10p, py::arg("T"), py::arg("F"), py::arg("t"), py::arg("f"));
  m.def("specificity_z", &specificity_z, py::arg("T"), py::arg("F"), py::arg("t"), py::arg("f"));
  m.def(
      "specificities",
      [](const AnnotatedCorpus& c, const std::string& selector, const std::string& pos) {
        Json arr = Json::array();
        for (const auto& s : specificities(select(c, selector), c, PosFilter::parse(pos))) arr.push_back(to_json(s));
        return to_py(arr);
      },
      py::arg("corpus"), py::arg("select"), py::arg("pos") = "NOUN,PROPN");

  m.def(
      "cooc_matrix",
      [](const AnnotatedCorpus& c, std::size_t n, const std::string& context, const std::string& pos,
         const std::string& selector, std::size_t workers) {
        const auto sub = select(c, selector);
        const auto filter = PosFilter::parse(pos);
        const auto top = select_top_lemmas(build_dictionary(sub, filter, workers), n);
        return to_py(to_json(build_cooc_matrix(sub, top.lemmas, ContextSpec::parse(context), filter, workers)));
      },
      py::arg("corpus"), py::arg("n") = 300, py::arg("context") = "sentence", py::arg("pos") = "NOUN,PROPN",
      py::arg("select") = "", py::arg("workers") = 1);

  m.def(
      "correspondence_analysis",
      [](const std::vector<std::string>& labels, const std::vector<std::vector<double>>& counts) {
        return to_py(to_json(correspondence_analysis(labels, dense_from(counts))));
      },
      py::arg("labels"), py::arg("counts"));

  m.def(
      "pivot",
      [](const AnnotatedCorpus& c, const std::string& word, const std::string& context, std::size_t min_joint,
         const std::string& pos, const std::string& selector) {
        return to_py(to_json(pivot_profile(select(c, selector), normalize_lemma(word), ContextSpec::parse(context),
                                           min_joint, PosFilter::parse(pos))));
      },
      py::arg("corpus"), py::arg("word"), py::arg("context") = "sentence", py::arg("min_joint") = kDefaultMinJoint,
      py::arg("pos") = "NOUN,PROPN", py::arg("select") = "");

  m.def(
      "build_report",
      [](const AnnotatedCorpus& a, const AnnotatedCorpus& b, const BilingualLexicon& lex, const py::object& config,
         std::size_t workers) {
        const auto cfg = config.is_none() ? ReportConfig{} : report_config_from_json(from_py(config));
        return to_py(to_json(build_report(a, b, lex, cfg, workers)));
      },
      py::arg("corpus_a"), py::arg("corpus_b"), py::arg("lexicon"), py::arg("config") = py::none(),
      py::arg("workers") = 1);

  m.def(
      "render_report",
      [](const py::object& report, const std::string& format) {
        if (format != "json" && format != "html") throw Error(errors::kInvalidArgument, "format must be json or html");
        return render_report(report_from_json(from_py(report)), format == "html" ? ReportFormat::html : ReportFormat::json);
      },
      py::arg("report"), py::arg("format") = "html");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"logometre"};
        argv.insert(argv.end(), args.begin(), args.end());
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(argv, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
