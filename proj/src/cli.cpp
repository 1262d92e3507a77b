#include "logometre/cli.hpp"

#include "logometre/error.hpp"
#include "logometre/explorer.hpp"
#include "logometre/parallel.hpp"
#include "logometre/report.hpp"
#include "logometre/svg.hpp"
#include "logometre/text.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace logometre {
namespace {

constexpr const char* kSynopsis =
    "usage: logometre [--workers N] [-o FILE] <command> ...\n"
    "  validate <corpus>\n"
    "  dict <corpus> [--select k=v] [--pos NOUN,PROPN] [--top K] [--format csv|json]\n"
    "  spec <corpus> --select k=v [--pos NOUN,PROPN] [--top K]\n"
    "  compare <corpusA> <corpusB> --lexicon L [--top 20] [--pos NOUN,PROPN]\n"
    "  cooc <corpus> [--select k=v] [--n 300] [--context sentence|paragraph|window:W] [--format json|csv]\n"
    "  ca <matrix.json> [--axes 1,2] [--svg out.svg] [--clusters K] [--seed 42]\n"
    "  pivot <corpus> --word W [--select k=v] [--min-joint 2] [--context C] [--svg cloud.svg]\n"
    "  report <corpusA> <corpusB> --lexicon L [--config cfg.json] [--format json|html]\n"
    "  serve <report.json> [--port 8080] [--host 127.0.0.1] [--corpus-a A] [--corpus-b B]\n";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errors::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(errors::kIoError, "cannot write " + path);
  f << content;
}

std::vector<std::size_t> parse_axes(const std::string& text) {
  std::vector<std::size_t> axes;
  for (const auto& part : split(text, ',')) {
    const auto t = trim(part);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--axes expects 1-based integers such as 1,2");
    }
    axes.push_back(std::stoul(std::string(t)));
  }
  if (axes.size() != 2) throw UsageError("--axes expects exactly two axes");
  return axes;
}

ContextSpec parse_context(const std::string& text) {
  try {
    return ContextSpec::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Prefixes data errors with the offending file so that the line number in
// the message can be located.
template <class F>
auto with_path(const std::string& path, F&& load) {
  try {
    return load();
  } catch (const Error& e) {
    if (e.kind() == errors::kIoError) throw;
    throw Error(e.kind(), path + ": " + e.what(), e.line());
  }
}

AnnotatedCorpus read_corpus(const std::string& path) {
  return with_path(path, [&] { return load_corpus(path); });
}

BilingualLexicon read_lexicon(const std::string& path) {
  return with_path(path, [&] { return load_lexicon(path); });
}

SubCorpus select(const AnnotatedCorpus& corpus, const std::string& selector) {
  if (selector.empty()) return whole(corpus);
  return partition(corpus, parse_selector(selector));
}

struct Options {
  std::size_t workers = 1;
  std::string output;

  std::string corpus, corpus_b, lexicon, select, pos = "NOUN,PROPN", format, word, svg, config, matrix;
  std::string context = "sentence", axes = "1,2", host = "127.0.0.1";
  std::string corpus_a_override, corpus_b_override;
  std::size_t top = 0, n = 300, min_joint = kDefaultMinJoint, clusters = 0;
  std::uint64_t seed = kDefaultSeed;
  int port = 8080;
};

std::string cmd_validate(const Options& o) {
  const auto corpus = read_corpus(o.corpus);
  std::size_t sentences = 0;
  std::uint64_t tokens = 0;
  for (const auto& d : corpus.documents()) {
    sentences += d.sentences.size();
    tokens += d.token_count();
  }
  std::ostringstream ss;
  ss << "ok lang=" << corpus.language() << " documents=" << corpus.documents().size()
     << " sentences=" << sentences << " tokens=" << tokens << " hash=" << corpus_hash(corpus) << '\n';
  return ss.str();
}

std::string cmd_dict(const Options& o) {
  const auto corpus = read_corpus(o.corpus);
  const auto d = build_dictionary(select(corpus, o.select), PosFilter::parse(o.pos), o.workers);
  if (o.format == "json") return dump_json(to_json(d, o.top));
  return dictionary_csv(d, o.top);  // csv is the default
}

std::string cmd_spec(const Options& o) {
  const auto corpus = read_corpus(o.corpus);
  const auto sub = select(corpus, o.select);
  auto scores = specificities(sub, corpus, PosFilter::parse(o.pos), o.workers);
  if (o.top > 0 && scores.size() > o.top) scores.resize(o.top);
  Json j;
  j["source"] = sub.identity();
  j["pos_filter"] = to_json(PosFilter::parse(o.pos));
  Json arr = Json::array();
  for (const auto& s : scores) arr.push_back(to_json(s));
  j["scores"] = std::move(arr);
  return dump_json(j);
}

std::string cmd_compare(const Options& o) {
  const auto a = read_corpus(o.corpus);
  const auto b = read_corpus(o.corpus_b);
  const auto lex = read_lexicon(o.lexicon);
  const auto filter = PosFilter::parse(o.pos);
  const auto da = build_dictionary(whole(a), filter, o.workers);
  const auto db = build_dictionary(whole(b), filter, o.workers);
  return dump_json(to_json(compare_ranks(da, db, lex, o.top == 0 ? 20 : o.top)));
}

std::string cmd_cooc(const Options& o) {
  const auto corpus = read_corpus(o.corpus);
  const auto sub = select(corpus, o.select);
  const auto filter = PosFilter::parse(o.pos);
  const auto d = build_dictionary(sub, filter, o.workers);
  const auto top = select_top_lemmas(d, o.n);
  const auto m = build_cooc_matrix(sub, top.lemmas, parse_context(o.context), filter, o.workers);
  if (o.format == "csv") return matrix_csv(m);
  auto j = to_json(m);
  j["vocabulary_too_small"] = top.vocabulary_too_small;
  return dump_json(j);
}

std::string cmd_ca(const Options& o) {
  const auto m = with_path(o.matrix, [&] { return cooc_matrix_from_json(parse_json(read_file(o.matrix))); });
  const auto sol = correspondence_analysis(m);
  const auto axes = parse_axes(o.axes);
  const auto points = project(sol, axes[0], axes[1]);
  std::optional<IsotopyClustering> clustering;
  if (o.clusters > 0) clustering = cluster_isotopies(sol, o.clusters, axes, o.seed);
  if (!o.svg.empty()) {
    FactorMapOptions opts;
    opts.axis_x = axes[0];
    opts.axis_y = axes[1];
    opts.title = m.source;
    opts.clusters = clustering ? &*clustering : nullptr;
    write_file(o.svg, factor_map_svg(sol, opts));
  }
  auto j = to_json(sol);
  Json plane;
  plane["axes"] = Json::array({axes[0], axes[1]});
  plane["points"] = to_json(points);
  j["projection"] = std::move(plane);
  if (clustering) j["clustering"] = to_json(*clustering);
  return dump_json(j);
}

std::string cmd_pivot(const Options& o) {
  const auto corpus = read_corpus(o.corpus);
  const auto profile = pivot_profile(select(corpus, o.select), normalize_lemma(o.word), parse_context(o.context),
                                     o.min_joint, PosFilter::parse(o.pos), o.workers);
  if (!o.svg.empty()) write_file(o.svg, pivot_cloud_svg(profile));
  return dump_json(to_json(profile));
}

std::string absolute(const std::string& path) { return std::filesystem::absolute(path).lexically_normal().string(); }

std::string cmd_report(const Options& o) {
  const auto a = read_corpus(o.corpus);
  const auto b = read_corpus(o.corpus_b);
  const auto lex = read_lexicon(o.lexicon);
  ReportConfig config;
  if (!o.config.empty()) config = report_config_from_json(parse_json(read_file(o.config)));
  auto report = build_report(a, b, lex, config, o.workers);
  report.inputs = ReportInputs{absolute(o.corpus), absolute(o.corpus_b), absolute(o.lexicon)};
  return render_report(report, o.format == "html" ? ReportFormat::html : ReportFormat::json);
}

ExplorerServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const Options& o, std::ostream& out) {
  auto report = report_from_json(parse_json(read_file(o.corpus)));
  std::string path_a = o.corpus_a_override, path_b = o.corpus_b_override;
  if (report.inputs) {
    if (path_a.empty()) path_a = report.inputs->corpus_a;
    if (path_b.empty()) path_b = report.inputs->corpus_b;
  }
  const auto load_optional = [](const std::string& p) -> std::optional<AnnotatedCorpus> {
    if (p.empty() || !std::filesystem::exists(p)) return std::nullopt;
    return read_corpus(p);
  };
  Explorer explorer(std::move(report), load_optional(path_a), load_optional(path_b), o.workers);
  ExplorerServer server(explorer);
  const int port = server.bind(o.host, o.port);
  out << "listening on http://" << o.host << ':' << port << std::endl;
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logometric comparison of non-aligned bilingual corpora", "logometre"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  Options o;
  o.workers = default_workers();
  app.add_option("--workers", o.workers, "worker threads for counting stages (env LOGOMETRE_WORKERS)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", o.output, "write the result to FILE instead of standard output");

  auto add_pos = [&](CLI::App* c) { c->add_option("--pos", o.pos, "POS tags to keep, '*' for all")->capture_default_str(); };
  auto add_select = [&](CLI::App* c) { c->add_option("--select", o.select, "metadata selector k=v[,k=v]"); };

  auto* validate = app.add_subcommand("validate", "parse a corpus and print a summary");
  validate->add_option("corpus", o.corpus)->required();

  auto* dict = app.add_subcommand("dict", "frequency dictionary");
  dict->add_option("corpus", o.corpus)->required();
  add_select(dict);
  add_pos(dict);
  dict->add_option("--top", o.top, "keep the K most frequent lemmas (0 = all)");
  dict->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->option_text("csv|json (default csv)");

  auto* spec = app.add_subcommand("spec", "specificity of a sub-corpus against its corpus");
  spec->add_option("corpus", o.corpus)->required();
  spec->add_option("--select", o.select, "metadata selector k=v[,k=v]")->required();
  add_pos(spec);
  spec->add_option("--top", o.top, "keep the K most specific lemmas (0 = all)");

  auto* compare = app.add_subcommand("compare", "compare the top-k dictionaries of two corpora");
  compare->add_option("corpusA", o.corpus)->required();
  compare->add_option("corpusB", o.corpus_b)->required();
  compare->add_option("--lexicon", o.lexicon)->required();
  compare->add_option("--top", o.top, "k (default 20)")->check(CLI::PositiveNumber);
  add_pos(compare);

  auto* cooc = app.add_subcommand("cooc", "cooccurrence matrix of the top lemmas");
  cooc->add_option("corpus", o.corpus)->required();
  add_select(cooc);
  add_pos(cooc);
  cooc->add_option("--n", o.n)->capture_default_str()->check(CLI::Range(2, 100000));
  cooc->add_option("--context", o.context)->capture_default_str();
  cooc->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->option_text("json|csv (default json)");

  auto* ca = app.add_subcommand("ca", "correspondence analysis of a cooccurrence matrix");
  ca->add_option("matrix", o.matrix)->required();
  ca->add_option("--axes", o.axes)->capture_default_str();
  ca->add_option("--svg", o.svg, "also write the factor map");
  ca->add_option("--clusters", o.clusters, "k-means isotopy clusters (0 = off)");
  ca->add_option("--seed", o.seed)->capture_default_str();
  ca->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

  auto* pivot = app.add_subcommand("pivot", "cooccurrents of a pivot word");
  pivot->add_option("corpus", o.corpus)->required();
  pivot->add_option("--word", o.word)->required();
  add_select(pivot);
  add_pos(pivot);
  pivot->add_option("--min-joint", o.min_joint)->capture_default_str()->check(CLI::PositiveNumber);
  pivot->add_option("--context", o.context)->capture_default_str();
  pivot->add_option("--svg", o.svg, "also write the word cloud");

  auto* report = app.add_subcommand("report", "full comparison report");
  report->add_option("corpusA", o.corpus)->required();
  report->add_option("corpusB", o.corpus_b)->required();
  report->add_option("--lexicon", o.lexicon)->required();
  report->add_option("--config", o.config, "JSON configuration shared by both sides");
  report->add_option("--format", o.format)->check(CLI::IsMember({"json", "html"}))->option_text("json|html (default json)");

  auto* serve = app.add_subcommand("serve", "serve the explorer API over a report");
  serve->add_option("report", o.corpus)->required();
  serve->add_option("--port", o.port)->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--corpus-a", o.corpus_a_override, "corpus for side a (default: path recorded in the report)");
  serve->add_option("--corpus-b", o.corpus_b_override, "corpus for side b (default: path recorded in the report)");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << kSynopsis;
    return kExitUsage;
  }

  try {
    std::string result;
    if (*validate) result = cmd_validate(o);
    else if (*dict) result = cmd_dict(o);
    else if (*spec) result = cmd_spec(o);
    else if (*compare) result = cmd_compare(o);
    else if (*cooc) result = cmd_cooc(o);
    else if (*ca) result = cmd_ca(o);
    else if (*pivot) result = cmd_pivot(o);
    else if (*report) result = cmd_report(o);
    else if (*serve) return cmd_serve(o, out);
    if (o.output.empty()) {
      out << result;
    } else {
      write_file(o.output, result);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kSynopsis;
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what();
    err << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << errors::kIoError << ": " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace logometre
