#include "logometre/json_io.hpp"

#include "logometre/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace logometre {

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  // buf: [-]d.ddddddddddde[+-]XX
  std::string s(buf);
  const bool negative = s.front() == '-';
  if (negative) s.erase(0, 1);
  const auto epos = s.find('e');
  const int exponent = std::atoi(s.c_str() + epos + 1);
  std::string digits = s.substr(0, 1) + s.substr(2, epos - 2);  // 12 digits

  std::string out;
  if (exponent >= 0) {
    const auto int_len = static_cast<std::size_t>(exponent) + 1;
    if (digits.size() <= int_len) {
      out = digits + std::string(int_len - digits.size(), '0');
    } else {
      out = digits.substr(0, int_len) + "." + digits.substr(int_len);
    }
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(std::string& out, const Json& j, int depth) {
  const auto indent = [&](int d) { out.append(static_cast<std::size_t>(d) * 2, ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        indent(depth + 1);
        out += Json(key).dump();
        out += ": ";
        write(out, value, depth + 1);
      }
      out += '\n';
      indent(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_scalar(e);
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        indent(depth + 1);
        write(out, j[i], depth + 1);
      }
      out += '\n';
      indent(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

[[noreturn]] void schema(const std::string& what) { throw Error(errors::kSchemaError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("field '") + key + "': " + e.what());
  }
}

double real(const Json& j) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) schema("expected a number");
  return j.get<double>();
}

Json real_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::vector<double> real_vector(const Json& j) {
  if (!j.is_array()) schema("expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(real(e));
  return v;
}

Json matrix_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) schema("matrix row count mismatch");
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = real_vector(j[i]);
    if (row.size() != cols) schema("matrix column count mismatch");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

Json pos_json(const PosFilter& f) {
  if (f.is_any()) return "*";
  Json a = Json::array();
  for (const auto& t : *f.tags()) a.push_back(t);
  return a;
}

PosFilter pos_from_json(const Json& j) {
  if (j.is_string()) return PosFilter::parse(j.get<std::string>());
  if (!j.is_array()) schema("pos_filter must be \"*\" or an array of tags");
  std::set<std::string> tags;
  for (const auto& t : j) tags.insert(t.get<std::string>());
  return PosFilter(std::move(tags));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const PosFilter& f) { return pos_json(f); }
PosFilter pos_filter_from_json(const Json& j) { return pos_from_json(j); }

std::string dump_json(const Json& value) {
  std::string out;
  write(out, value, 0);
  out += '\n';
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const ContextSpec& c) {
  Json j;
  j["unit"] = c.unit_name();
  if (c.unit == ContextSpec::Unit::window) j["window"] = c.window;
  j["cross_document"] = false;
  return j;
}

ContextSpec context_from_json(const Json& j) {
  if (j.is_string()) return ContextSpec::parse(j.get<std::string>());
  const auto unit = get<std::string>(j, "unit");
  if (unit == "window") return ContextSpec::tokens(get<std::size_t>(j, "window"));
  return ContextSpec::parse(unit);
}

Json to_json(const FrequencyDictionary& d, std::size_t limit) {
  Json j;
  j["source"] = d.source;
  j["language"] = d.language;
  j["pos_filter"] = pos_json(d.pos_filter);
  j["total_filtered_tokens"] = d.total_filtered_tokens;
  j["vocabulary"] = d.entries.size();
  Json entries = Json::array();
  const auto n = limit == 0 ? d.entries.size() : std::min(limit, d.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = d.entries[i];
    Json row;
    row["rank"] = e.rank;
    row["lemma"] = e.lemma;
    row["pos"] = e.pos;
    row["count"] = e.count;
    row["relative_freq_per_10k"] = d.relative_per_10k(e);
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

FrequencyDictionary dictionary_from_json(const Json& j) {
  FrequencyDictionary d;
  d.source = get<std::string>(j, "source");
  d.language = get<std::string>(j, "language");
  d.pos_filter = pos_from_json(field(j, "pos_filter"));
  d.total_filtered_tokens = get<std::uint64_t>(j, "total_filtered_tokens");
  for (const auto& row : field(j, "entries")) {
    FrequencyEntry e;
    e.rank = get<std::size_t>(row, "rank");
    e.lemma = get<std::string>(row, "lemma");
    e.pos = get<std::string>(row, "pos");
    e.count = get<std::uint64_t>(row, "count");
    d.entries.push_back(std::move(e));
  }
  return d;
}

std::string dictionary_csv(const FrequencyDictionary& d, std::size_t limit) {
  std::string out = "rank,lemma,count,relative_freq_per_10k\n";
  const auto n = limit == 0 ? d.entries.size() : std::min(limit, d.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = d.entries[i];
    out += std::to_string(e.rank) + ',' + csv_field(e.lemma) + ',' + std::to_string(e.count) + ',' +
           format_real(d.relative_per_10k(e)) + '\n';
  }
  return out;
}

Json to_json(const RankComparison& c) {
  Json j;
  j["k"] = c.k;
  j["overlap"] = c.overlap;
  j["lang_a"] = c.lang_a;
  j["lang_b"] = c.lang_b;
  j["lexicon_id"] = c.lexicon_id;
  Json pairs = Json::array();
  for (const auto& p : c.pairs) {
    Json row;
    row["lemma_a"] = optional_json(p.lemma_a);
    row["rank_a"] = optional_json(p.rank_a);
    row["lemma_b"] = optional_json(p.lemma_b);
    row["rank_b"] = optional_json(p.rank_b);
    pairs.push_back(std::move(row));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

RankComparison rank_comparison_from_json(const Json& j) {
  RankComparison c;
  c.k = get<std::size_t>(j, "k");
  c.overlap = get<std::size_t>(j, "overlap");
  c.lang_a = get<std::string>(j, "lang_a");
  c.lang_b = get<std::string>(j, "lang_b");
  c.lexicon_id = get<std::string>(j, "lexicon_id");
  for (const auto& row : field(j, "pairs")) {
    RankPair p;
    if (!field(row, "lemma_a").is_null()) p.lemma_a = get<std::string>(row, "lemma_a");
    if (!field(row, "rank_a").is_null()) p.rank_a = get<std::size_t>(row, "rank_a");
    if (!field(row, "lemma_b").is_null()) p.lemma_b = get<std::string>(row, "lemma_b");
    if (!field(row, "rank_b").is_null()) p.rank_b = get<std::size_t>(row, "rank_b");
    c.pairs.push_back(std::move(p));
  }
  return c;
}

Json to_json(const SpecificityScore& s) {
  Json j;
  j["lemma"] = s.lemma;
  j["f"] = s.part_freq;
  j["F"] = s.corpus_freq;
  j["t"] = s.part_size;
  j["T"] = s.corpus_size;
  j["z"] = s.z;
  j["log10p"] = s.log10p;
  return j;
}

Json to_json(const CooccurrenceMatrix& m) {
  Json j;
  j["labels"] = m.labels;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m.at(i, k));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  j["context"] = to_json(m.context);
  j["counting"] = "presence";
  j["diagonal"] = "zeroed";
  j["pos_filter"] = pos_json(m.pos_filter);
  j["source"] = m.source;
  j["context_count"] = m.context_count;
  return j;
}

CooccurrenceMatrix cooc_matrix_from_json(const Json& j) {
  CooccurrenceMatrix m;
  m.labels = get<std::vector<std::string>>(j, "labels");
  const auto& rows = field(j, "counts");
  const auto n = m.labels.size();
  if (!rows.is_array() || rows.size() != n) schema("counts must be an N x N array matching labels");
  m.counts.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) schema("counts must be an N x N array matching labels");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        schema("counts must be non-negative integers");
      }
      m.counts.push_back(v.get<std::uint64_t>());
    }
  }
  if (j.contains("context")) m.context = context_from_json(j["context"]);
  if (j.contains("pos_filter")) m.pos_filter = pos_from_json(j["pos_filter"]);
  if (j.contains("source")) m.source = j["source"].get<std::string>();
  if (j.contains("context_count")) m.context_count = j["context_count"].get<std::uint64_t>();
  return m;
}

std::string matrix_csv(const CooccurrenceMatrix& m) {
  std::string out;
  for (const auto& l : m.labels) out += ',' + csv_field(l);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += csv_field(m.labels[i]);
    for (std::size_t k = 0; k < m.size(); ++k) out += ',' + std::to_string(m.at(i, k));
    out += '\n';
  }
  return out;
}

Json to_json(const PivotProfile& p) {
  Json j;
  j["pivot"] = p.pivot;
  j["context_count"] = p.context_count;
  j["total_contexts"] = p.total_contexts;
  j["context"] = to_json(p.context);
  j["pos_filter"] = pos_json(p.pos_filter);
  j["min_joint"] = p.min_joint;
  j["source"] = p.source;
  j["index"] = kPivotIndexFormula;
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    Json row;
    row["lemma"] = e.lemma;
    row["k"] = e.joint;
    row["F"] = e.contexts;
    row["z"] = e.z;
    if (e.log10p) row["log10p"] = *e.log10p;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

PivotProfile pivot_profile_from_json(const Json& j) {
  PivotProfile p;
  p.pivot = get<std::string>(j, "pivot");
  p.context_count = get<std::uint64_t>(j, "context_count");
  p.total_contexts = get<std::uint64_t>(j, "total_contexts");
  p.context = context_from_json(field(j, "context"));
  p.pos_filter = pos_from_json(field(j, "pos_filter"));
  p.min_joint = get<std::size_t>(j, "min_joint");
  p.source = get<std::string>(j, "source");
  for (const auto& row : field(j, "entries")) {
    PivotEntry e;
    e.lemma = get<std::string>(row, "lemma");
    e.joint = get<std::uint64_t>(row, "k");
    e.contexts = get<std::uint64_t>(row, "F");
    e.z = real(field(row, "z"));
    if (row.contains("log10p")) e.log10p = real(row["log10p"]);
    p.entries.push_back(std::move(e));
  }
  return p;
}

Json to_json(const CaSolution& s) {
  Json j;
  j["labels"] = s.labels;
  j["singular_values"] = real_array(s.singular_values);
  j["inertia_pct"] = real_array(s.inertia_pct);
  j["total_inertia"] = s.total_inertia;
  j["row_masses"] = real_array(s.row_masses);
  j["col_masses"] = real_array(s.col_masses);
  j["row_coords"] = matrix_json(s.row_coords);
  j["col_coords"] = matrix_json(s.col_coords);
  j["contributions"] = matrix_json(s.contributions);
  j["cos2"] = matrix_json(s.cos2);
  j["dropped_labels"] = s.dropped_labels;
  return j;
}

CaSolution ca_solution_from_json(const Json& j) {
  CaSolution s;
  s.labels = get<std::vector<std::string>>(j, "labels");
  s.singular_values = real_vector(field(j, "singular_values"));
  s.inertia_pct = real_vector(field(j, "inertia_pct"));
  const auto n = s.labels.size();
  const auto k = s.singular_values.size();
  if (s.inertia_pct.size() != k) schema("inertia_pct length differs from singular_values");
  s.row_coords = matrix_from(field(j, "row_coords"), n, k);
  s.contributions = matrix_from(field(j, "contributions"), n, k);
  s.cos2 = matrix_from(field(j, "cos2"), n, k);
  s.dropped_labels = get<std::vector<std::string>>(j, "dropped_labels");
  if (j.contains("col_coords")) s.col_coords = matrix_from(j["col_coords"], n, k);
  if (j.contains("row_masses")) s.row_masses = real_vector(j["row_masses"]);
  if (j.contains("col_masses")) s.col_masses = real_vector(j["col_masses"]);
  if (j.contains("total_inertia")) s.total_inertia = real(j["total_inertia"]);
  if (!s.row_masses.empty() && s.row_masses.size() != n) schema("row_masses length differs from labels");
  return s;
}

Json to_json(const IsotopyClustering& c) {
  Json j;
  j["method"] = "mass-weighted k-means on principal coordinates (interpretation aid)";
  j["axes"] = c.axes_used;
  j["k"] = c.k;
  j["seed"] = c.seed;
  j["iterations"] = c.iterations;
  j["within_inertia"] = c.within_inertia;
  Json assignment = Json::array();
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    Json row;
    row["lemma"] = c.labels[i];
    row["cluster"] = c.assignment[i];
    assignment.push_back(std::move(row));
  }
  j["assignment"] = std::move(assignment);
  return j;
}

IsotopyClustering clustering_from_json(const Json& j) {
  IsotopyClustering c;
  c.axes_used = get<std::vector<std::size_t>>(j, "axes");
  c.k = get<std::size_t>(j, "k");
  c.seed = get<std::uint64_t>(j, "seed");
  c.iterations = get<std::size_t>(j, "iterations");
  c.within_inertia = real(field(j, "within_inertia"));
  for (const auto& row : field(j, "assignment")) {
    c.labels.push_back(get<std::string>(row, "lemma"));
    c.assignment.push_back(get<std::size_t>(row, "cluster"));
  }
  return c;
}

Json to_json(const std::vector<ProjectedPoint>& points) {
  Json a = Json::array();
  for (const auto& p : points) {
    Json row;
    row["lemma"] = p.lemma;
    row["x"] = p.x;
    row["y"] = p.y;
    row["ctr_x"] = p.ctr_x;
    row["ctr_y"] = p.ctr_y;
    row["cos2"] = p.cos2;
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace logometre
