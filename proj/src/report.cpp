#include "logometre/report.hpp"

#include "logometre/error.hpp"
#include "logometre/svg.hpp"
#include "logometre/text.hpp"

#include <future>
#include <set>

namespace logometre {

namespace {

const std::set<std::string> kConfigKeys = {"k",    "n_lemmas", "context", "pos_filter", "min_joint", "pivots",
                                           "axes", "clusters", "seed",    "z_max"};
const std::set<std::string> kPerSideKeys = {"a", "b", "side_a", "side_b", "sides", "overrides", "per_side"};

bool per_side_key(const std::string& key) {
  if (kPerSideKeys.contains(key)) return true;
  // e.g. "k_a", "n_lemmas_b", "context_a"
  for (const auto& base : kConfigKeys) {
    if (key == base + "_a" || key == base + "_b") return true;
  }
  return false;
}

std::size_t positive(const Json& j, const char* key) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) {
    throw Error(errors::kSchemaError, std::string("'") + key + "' must be a positive integer");
  }
  return j.get<std::size_t>();
}

ReportSide build_side(const AnnotatedCorpus& corpus, const ReportConfig& config, bool side_a,
                      std::size_t workers) {
  ReportSide side;
  side.language = corpus.language();
  side.corpus_hash = corpus_hash(corpus);
  side.documents = corpus.documents().size();
  side.token_count = corpus.token_count();

  const auto all = whole(corpus);
  side.dictionary = build_dictionary(all, config.pos_filter, workers);
  const auto top = select_top_lemmas(side.dictionary, config.n_lemmas);
  side.vocabulary_too_small = top.vocabulary_too_small;
  side.matrix = build_cooc_matrix(all, top.lemmas, config.context, config.pos_filter, workers);
  side.ca = correspondence_analysis(side.matrix);
  if (config.clusters > 0) {
    std::vector<std::size_t> axes{config.axis_x};
    if (config.axis_y != config.axis_x) axes.push_back(config.axis_y);
    side.clustering = cluster_isotopies(side.ca, config.clusters, axes, config.seed);
  }
  for (const auto& [word_a, word_b] : config.pivots) {
    PivotResult result;
    result.word = side_a ? word_a : word_b;
    try {
      result.profile = pivot_profile(all, result.word, config.context, config.min_joint, config.pos_filter, workers);
    } catch (const Error& e) {
      if (e.kind() != errors::kPivotAbsent) throw;
      result.error = e.kind();
    }
    side.pivots.push_back(std::move(result));
  }
  return side;
}

Json side_json(const ReportSide& side, const ReportConfig& config) {
  Json j;
  j["language"] = side.language;
  j["corpus_hash"] = side.corpus_hash;
  j["documents"] = side.documents;
  j["token_count"] = side.token_count;
  j["top_k"] = to_json(side.dictionary, config.k)["entries"];
  j["dictionary"] = to_json(side.dictionary);
  j["vocabulary_too_small"] = side.vocabulary_too_small;
  j["cooc_matrix"] = to_json(side.matrix);
  j["ca"] = to_json(side.ca);
  if (side.clustering) j["clustering"] = to_json(*side.clustering);
  Json pivots = Json::array();
  for (const auto& p : side.pivots) {
    if (p.profile) {
      pivots.push_back(to_json(*p.profile));
    } else {
      Json miss;
      miss["pivot"] = p.word;
      miss["error"] = p.error;
      pivots.push_back(std::move(miss));
    }
  }
  j["pivots"] = std::move(pivots);
  return j;
}

ReportSide side_from_json(const Json& j) {
  const auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw Error(errors::kSchemaError, std::string("report side missing '") + key + "'");
    return j[key];
  };
  ReportSide side;
  side.language = need("language").get<std::string>();
  side.corpus_hash = need("corpus_hash").get<std::string>();
  side.documents = need("documents").get<std::size_t>();
  side.token_count = need("token_count").get<std::uint64_t>();
  side.dictionary = dictionary_from_json(need("dictionary"));
  side.vocabulary_too_small = need("vocabulary_too_small").get<bool>();
  side.matrix = cooc_matrix_from_json(need("cooc_matrix"));
  side.ca = ca_solution_from_json(need("ca"));
  if (j.contains("clustering")) side.clustering = clustering_from_json(j["clustering"]);
  for (const auto& p : need("pivots")) {
    PivotResult r;
    if (p.contains("error")) {
      r.word = p["pivot"].get<std::string>();
      r.error = p["error"].get<std::string>();
    } else {
      r.profile = pivot_profile_from_json(p);
      r.word = r.profile->pivot;
    }
    side.pivots.push_back(std::move(r));
  }
  return side;
}

}  // namespace

ReportConfig report_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(errors::kSchemaError, "report configuration must be a JSON object");
  ReportConfig c;
  for (const auto& [key, value] : j.items()) {
    if (per_side_key(key)) {
      throw Error(errors::kParameterMismatch,
                  "per-side parameter '" + key + "' rejected: both sides share one configuration");
    }
    if (!kConfigKeys.contains(key)) throw Error(errors::kSchemaError, "unknown configuration key '" + key + "'");
  }
  try {
    if (j.contains("k")) c.k = positive(j["k"], "k");
    if (j.contains("n_lemmas")) c.n_lemmas = positive(j["n_lemmas"], "n_lemmas");
    if (j.contains("context")) c.context = context_from_json(j["context"]);
    if (j.contains("pos_filter")) c.pos_filter = pos_filter_from_json(j["pos_filter"]);
    if (j.contains("min_joint")) c.min_joint = positive(j["min_joint"], "min_joint");
    if (j.contains("pivots")) {
      for (const auto& pair : j["pivots"]) {
        std::string a, b;
        if (pair.is_array() && pair.size() == 2) {
          a = pair[0].get<std::string>();
          b = pair[1].get<std::string>();
        } else if (pair.is_object()) {
          a = pair.at("lemma_a").get<std::string>();
          b = pair.at("lemma_b").get<std::string>();
        } else {
          throw Error(errors::kSchemaError, "pivots must be [lemma_a, lemma_b] pairs");
        }
        c.pivots.emplace_back(normalize_lemma(a), normalize_lemma(b));
      }
    }
    if (j.contains("axes")) {
      const auto& axes = j["axes"];
      if (!axes.is_array() || axes.size() != 2) throw Error(errors::kSchemaError, "axes must be [x, y]");
      c.axis_x = positive(axes[0], "axes");
      c.axis_y = positive(axes[1], "axes");
    }
    if (j.contains("clusters")) c.clusters = j["clusters"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("z_max")) c.z_max = j["z_max"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(errors::kSchemaError, std::string("configuration: ") + e.what());
  }
  if (c.n_lemmas < 2) throw Error(errors::kSchemaError, "n_lemmas must be at least 2");
  return c;
}

Json to_json(const ReportConfig& c) {
  Json j;
  j["k"] = c.k;
  j["n_lemmas"] = c.n_lemmas;
  j["context"] = to_json(c.context);
  j["pos_filter"] = to_json(c.pos_filter);
  j["min_joint"] = c.min_joint;
  Json pivots = Json::array();
  for (const auto& [a, b] : c.pivots) pivots.push_back(Json::array({a, b}));
  j["pivots"] = std::move(pivots);
  j["axes"] = Json::array({c.axis_x, c.axis_y});
  j["clusters"] = c.clusters;
  j["seed"] = c.seed;
  j["z_max"] = c.z_max;
  return j;
}

ComparisonReport build_report(const AnnotatedCorpus& a, const AnnotatedCorpus& b, const BilingualLexicon& lexicon,
                              const ReportConfig& config, std::size_t workers) {
  const auto mismatch = [](const std::string& declared, const std::string& actual) {
    return !declared.empty() && declared != actual;
  };
  if (mismatch(lexicon.lang_a(), a.language()) || mismatch(lexicon.lang_b(), b.language())) {
    throw Error(errors::kLexiconLanguageMismatch, "lexicon maps " + lexicon.lang_a() + "->" + lexicon.lang_b() +
                                                      " but corpora are " + a.language() + "->" + b.language());
  }

  ComparisonReport report;
  report.config = config;
  report.lexicon_id = lexicon.id();
  report.lang_a = a.language();
  report.lang_b = b.language();
  if (workers > 1) {
    auto future_b = std::async(std::launch::async, [&] { return build_side(b, config, false, workers); });
    report.side_a = build_side(a, config, true, workers);
    report.side_b = future_b.get();
  } else {
    report.side_a = build_side(a, config, true, workers);
    report.side_b = build_side(b, config, false, workers);
  }
  report.rank_comparison = compare_ranks(report.side_a.dictionary, report.side_b.dictionary, lexicon, config.k);
  return report;
}

Json to_json(const ComparisonReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["parameters"] = to_json(r.config);
  j["lexicon_id"] = r.lexicon_id;
  j["languages"] = Json::array({r.lang_a, r.lang_b});
  if (r.inputs) {
    Json in;
    in["corpus_a"] = r.inputs->corpus_a;
    in["corpus_b"] = r.inputs->corpus_b;
    in["lexicon"] = r.inputs->lexicon;
    j["inputs"] = std::move(in);
  }
  j["rank_comparison"] = to_json(r.rank_comparison);
  Json paired = Json::array();
  for (const auto& [a, b] : r.config.pivots) {
    Json p;
    p["lemma_a"] = a;
    p["lemma_b"] = b;
    paired.push_back(std::move(p));
  }
  j["paired_pivots"] = std::move(paired);
  j["side_a"] = side_json(r.side_a, r.config);
  j["side_b"] = side_json(r.side_b, r.config);
  return j;
}

ComparisonReport report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kReportSchema) {
    throw Error(errors::kSchemaError, std::string("not a ") + kReportSchema + " document");
  }
  try {
    ComparisonReport r;
    r.config = report_config_from_json(j.at("parameters"));
    r.lexicon_id = j.at("lexicon_id").get<std::string>();
    r.lang_a = j.at("languages").at(0).get<std::string>();
    r.lang_b = j.at("languages").at(1).get<std::string>();
    if (j.contains("inputs")) {
      const auto& in = j["inputs"];
      r.inputs = ReportInputs{in.at("corpus_a").get<std::string>(), in.at("corpus_b").get<std::string>(),
                              in.at("lexicon").get<std::string>()};
    }
    r.rank_comparison = rank_comparison_from_json(j.at("rank_comparison"));
    r.side_a = side_from_json(j.at("side_a"));
    r.side_b = side_from_json(j.at("side_b"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(errors::kSchemaError, std::string("report: ") + e.what());
  }
}

namespace {

constexpr const char* kStyle = R"(body{font-family:sans-serif;margin:24px;color:#222}
h1{font-size:22px}h2{font-size:18px;margin-top:32px}
table{border-collapse:collapse;margin:8px 0}td,th{border:1px solid #ccc;padding:3px 8px;font-size:13px}
th{background:#f3f3f3}.shared{background:#e8f4e8}.num{text-align:right}
.pair{display:flex;gap:16px;flex-wrap:wrap}.pair>div{flex:1;min-width:300px}
.missing{color:#a00;font-style:italic}.note{color:#666;font-size:12px})";

std::string cell(const std::string& text, const char* cls = nullptr) {
  std::string out = cls ? std::string("<td class=\"") + cls + "\">" : std::string("<td>");
  return out + xml_escape(text) + "</td>";
}

std::string side_title(const ReportSide& side, const char* which) {
  return std::string(which) + " (" + side.language + ")";
}

std::string rank_table(const ComparisonReport& r) {
  const auto top_a = top_k(r.side_a.dictionary, r.config.k);
  const auto top_b = top_k(r.side_b.dictionary, r.config.k);
  std::set<std::string> shared_a, shared_b;
  for (const auto& p : r.rank_comparison.pairs) {
    if (p.lemma_a && p.rank_b && *p.rank_b <= r.config.k) {
      shared_a.insert(*p.lemma_a);
      shared_b.insert(*p.lemma_b);
    }
  }
  std::string html = "<table class=\"rank-table\">\n<thead><tr><th>Rank</th><th>" +
                     xml_escape(side_title(r.side_a, "A")) + "</th><th>Count</th><th>" +
                     xml_escape(side_title(r.side_b, "B")) + "</th><th>Count</th></tr></thead>\n<tbody>\n";
  const auto rows = std::max(top_a.size(), top_b.size());
  for (std::size_t i = 0; i < rows; ++i) {
    html += "<tr><td class=\"num\">" + std::to_string(i + 1) + "</td>";
    if (i < top_a.size()) {
      html += cell(top_a[i].lemma, shared_a.contains(top_a[i].lemma) ? "shared" : nullptr);
      html += cell(std::to_string(top_a[i].count), "num");
    } else {
      html += "<td></td><td></td>";
    }
    if (i < top_b.size()) {
      html += cell(top_b[i].lemma, shared_b.contains(top_b[i].lemma) ? "shared" : nullptr);
      html += cell(std::to_string(top_b[i].count), "num");
    } else {
      html += "<td></td><td></td>";
    }
    html += "</tr>\n";
  }
  html += "</tbody>\n</table>\n";
  return html;
}

std::string factor_map(const ReportSide& side, const ReportConfig& config, const char* which) {
  FactorMapOptions o;
  o.title = side_title(side, which);
  o.clusters = side.clustering ? &*side.clustering : nullptr;
  if (side.ca.axes() >= std::max(config.axis_x, config.axis_y)) {
    o.axis_x = config.axis_x;
    o.axis_y = config.axis_y;
    return factor_map_svg(side.ca, o);
  }
  if (side.ca.axes() >= 1) {
    o.axis_x = o.axis_y = 1;
    return factor_map_svg(side.ca, o);
  }
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" class=\"factor-map\" width=\"400\" height=\"60\">"
         "<text x=\"10\" y=\"30\">no factorial axis retained</text></svg>\n";
}

std::string inertia_line(const ReportSide& side) {
  std::string out = "<p class=\"note\">" + xml_escape(side.language) + ": total inertia " +
                    format_real(side.ca.total_inertia) + "; axes";
  for (std::size_t k = 0; k < std::min<std::size_t>(5, side.ca.axes()); ++k) {
    out += " " + std::to_string(k + 1) + ": " + format_real(side.ca.inertia_pct[k]) + "%";
  }
  if (!side.ca.dropped_labels.empty()) {
    out += "; dropped (zero margins): " + std::to_string(side.ca.dropped_labels.size());
  }
  return out + "</p>\n";
}

std::string cloud(const PivotResult& p, const ReportSide& side, const ReportConfig& config) {
  if (!p.profile) {
    return "<p class=\"missing\">'" + xml_escape(p.word) + "' not found in " + xml_escape(side.language) +
           " corpus (" + xml_escape(p.error) + ")</p>\n";
  }
  CloudOptions o;
  o.z_max = config.z_max;
  o.title = p.word + " (" + side.language + ", " + std::to_string(p.profile->context_count) + " contexts)";
  return pivot_cloud_svg(*p.profile, o);
}

std::string render_html(const ComparisonReport& r) {
  std::string html = "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Comparison report " +
                     xml_escape(r.lang_a) + " / " + xml_escape(r.lang_b) + "</title>\n<style>" + kStyle +
                     "</style>\n</head>\n<body>\n";
  html += "<h1>Comparison report: " + xml_escape(r.lang_a) + " / " + xml_escape(r.lang_b) + "</h1>\n";

  html += "<section id=\"parameters\">\n<h2>Parameters</h2>\n<table class=\"params\">\n";
  const auto& c = r.config;
  const auto param = [&](const std::string& k, const std::string& v) {
    html += "<tr><th>" + xml_escape(k) + "</th><td>" + xml_escape(v) + "</td></tr>\n";
  };
  param("top k", std::to_string(c.k));
  param("matrix lemmas", std::to_string(c.n_lemmas));
  param("context", c.context.to_string());
  param("POS filter", c.pos_filter.to_string());
  param("min joint", std::to_string(c.min_joint));
  param("lexicon", r.lexicon_id);
  param("tokens", std::to_string(r.side_a.token_count) + " / " + std::to_string(r.side_b.token_count));
  html += "</table>\n</section>\n";

  html += "<section id=\"ranks\">\n<h2>Frequency ranks</h2>\n<p>Top-" + std::to_string(c.k) +
          " overlap through the lexicon: <strong>" + std::to_string(r.rank_comparison.overlap) + " / " +
          std::to_string(c.k) + "</strong></p>\n";
  html += rank_table(r);
  html += "</section>\n";

  html += "<section id=\"factor-maps\">\n<h2>Correspondence analysis of cooccurrence profiles</h2>\n";
  html += "<div class=\"pair\">\n<div>\n" + factor_map(r.side_a, c, "A") + inertia_line(r.side_a) + "</div>\n";
  html += "<div>\n" + factor_map(r.side_b, c, "B") + inertia_line(r.side_b) + "</div>\n</div>\n";
  html += "<p class=\"note\">Axis percentages of the two solutions are reported side by side and are not "
          "commensurable across corpora.</p>\n</section>\n";

  if (!c.pivots.empty()) {
    html += "<section id=\"pivots\">\n<h2>Pivot cooccurrence profiles</h2>\n<p class=\"note\">Word size is "
            "linear in the cooccurrence index ";
    html += xml_escape(kPivotIndexFormula);
    html += ", clipped to [0, " + format_real(c.z_max) + "].</p>\n";
    for (std::size_t i = 0; i < c.pivots.size(); ++i) {
      html += "<div class=\"pair\">\n<div>\n" + cloud(r.side_a.pivots[i], r.side_a, c) + "</div>\n<div>\n" +
              cloud(r.side_b.pivots[i], r.side_b, c) + "</div>\n</div>\n";
    }
    html += "</section>\n";
  }
  html += "</body>\n</html>\n";
  return html;
}

}  // namespace

std::string render_report(const ComparisonReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump_json(to_json(r));
  return render_html(r);
}

}  // namespace logometre
