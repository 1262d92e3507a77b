#include "logometre/explorer.hpp"

#include "logometre/error.hpp"
#include "logometre/text.hpp"

#include <httplib.h>

#include <charconv>

namespace logometre {

std::optional<std::string> PivotCache::get(const std::string& key) {
  std::lock_guard lock(mutex_);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void PivotCache::put(const std::string& key, std::string value) {
  std::lock_guard lock(mutex_);
  if (const auto it = index_.find(key); it != index_.end()) {
    it->second->second = std::move(value);
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, std::move(value));
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

std::size_t PivotCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

namespace {

HttpResponse error_response(int status, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  return {status, dump_json(j)};
}

HttpResponse ok(const Json& j) { return {200, dump_json(j)}; }

std::optional<std::size_t> parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return v;
}

int side_index(const std::string& side) {
  if (side == "a") return 0;
  if (side == "b") return 1;
  return -1;
}

}  // namespace

Explorer::Explorer(ComparisonReport report, std::optional<AnnotatedCorpus> corpus_a,
                   std::optional<AnnotatedCorpus> corpus_b, std::size_t workers)
    : report_(std::move(report)), corpora_{std::move(corpus_a), std::move(corpus_b)}, workers_(workers) {
  const std::array<const ReportSide*, 2> sides{&report_.side_a, &report_.side_b};
  for (std::size_t i = 0; i < 2; ++i) {
    if (corpora_[i] && corpus_hash(*corpora_[i]) != sides[i]->corpus_hash) {
      throw Error(errors::kCorpusMismatch, std::string("corpus for side ") + (i == 0 ? "a" : "b") +
                                               " does not match the hash recorded in the report");
    }
  }
}

HttpResponse Explorer::handle(std::string_view path, const std::map<std::string, std::string>& query) const {
  if (path == "/api/meta") return meta();
  if (path == "/api/compare") return compare();
  const auto route = [&](std::string_view prefix) -> std::optional<std::string> {
    if (!path.starts_with(prefix)) return std::nullopt;
    return std::string(path.substr(prefix.size()));
  };
  if (auto side = route("/api/dict/")) return dict(*side, query);
  if (auto side = route("/api/ca/")) return ca(*side, query);
  if (auto side = route("/api/pivot/")) return pivot(*side, query);
  return error_response(404, "NotFound", "no endpoint " + std::string(path));
}

HttpResponse Explorer::meta() const {
  Json j;
  j["schema"] = kReportSchema;
  Json langs;
  langs["a"] = report_.lang_a;
  langs["b"] = report_.lang_b;
  j["languages"] = std::move(langs);
  j["parameters"] = to_json(report_.config);
  j["lexicon_id"] = report_.lexicon_id;
  Json hashes;
  hashes["a"] = report_.side_a.corpus_hash;
  hashes["b"] = report_.side_b.corpus_hash;
  j["corpus_hashes"] = std::move(hashes);
  Json axes;
  axes["a"] = report_.side_a.ca.axes();
  axes["b"] = report_.side_b.ca.axes();
  j["retained_axes"] = std::move(axes);
  j["pivot_queries"] = corpora_[0].has_value() && corpora_[1].has_value();
  return ok(j);
}

HttpResponse Explorer::dict(const std::string& side, const std::map<std::string, std::string>& query) const {
  const int s = side_index(side);
  if (s < 0) return error_response(404, "UnknownSide", "side must be 'a' or 'b'");
  std::size_t top = report_.config.k;
  if (const auto it = query.find("top"); it != query.end()) {
    const auto v = parse_count(it->second);
    if (!v || *v == 0) return error_response(400, "MalformedQuery", "top must be a positive integer");
    top = *v;
  }
  const auto& d = (s == 0 ? report_.side_a : report_.side_b).dictionary;
  Json j;
  j["side"] = side;
  j["language"] = d.language;
  j["total_filtered_tokens"] = d.total_filtered_tokens;
  j["entries"] = to_json(d, top)["entries"];
  return ok(j);
}

HttpResponse Explorer::compare() const { return ok(to_json(report_.rank_comparison)); }

HttpResponse Explorer::ca(const std::string& side, const std::map<std::string, std::string>& query) const {
  const int s = side_index(side);
  if (s < 0) return error_response(404, "UnknownSide", "side must be 'a' or 'b'");
  std::size_t ax = report_.config.axis_x, ay = report_.config.axis_y;
  if (const auto it = query.find("axes"); it != query.end()) {
    const auto parts = split(it->second, ',');
    const auto x = parts.size() == 2 ? parse_count(parts[0]) : std::nullopt;
    const auto y = parts.size() == 2 ? parse_count(parts[1]) : std::nullopt;
    if (!x || !y) return error_response(400, "MalformedQuery", "axes must be two integers, e.g. 1,2");
    ax = *x;
    ay = *y;
  }
  const auto& sd = s == 0 ? report_.side_a : report_.side_b;
  try {
    Json j;
    j["side"] = side;
    j["axes"] = Json::array({ax, ay});
    j["inertia_pct"] = Json::array({sd.ca.inertia_pct.at(ax - 1), sd.ca.inertia_pct.at(ay - 1)});
    j["points"] = to_json(project(sd.ca, ax, ay));
    if (sd.clustering) {
      Json clusters = Json::array();
      for (auto c : sd.clustering->assignment) clusters.push_back(c);
      j["clusters"] = std::move(clusters);
    }
    return ok(j);
  } catch (const Error& e) {
    return error_response(400, e.kind(), e.what());
  } catch (const std::out_of_range&) {
    return error_response(400, errors::kAxisOutOfRange, "axis outside the retained axes");
  }
}

HttpResponse Explorer::pivot(const std::string& side, const std::map<std::string, std::string>& query) const {
  const int s = side_index(side);
  if (s < 0) return error_response(404, "UnknownSide", "side must be 'a' or 'b'");
  const auto word = query.find("word");
  if (word == query.end() || trim(word->second).empty()) {
    return error_response(400, "MalformedQuery", "word parameter is required");
  }
  if (!is_valid_utf8(word->second)) return error_response(400, "MalformedQuery", "word is not valid UTF-8");
  std::size_t min_joint = report_.config.min_joint;
  if (const auto it = query.find("min"); it != query.end()) {
    const auto v = parse_count(it->second);
    if (!v || *v == 0) return error_response(400, "MalformedQuery", "min must be a positive integer");
    min_joint = *v;
  }
  if (!corpora_[static_cast<std::size_t>(s)]) {
    return error_response(503, "CorpusUnavailable", "pivot queries need the corpus loaded");
  }
  const auto lemma = normalize_lemma(word->second);
  const auto key = side + '\t' + lemma + '\t' + std::to_string(min_joint);
  if (auto hit = cache_.get(key)) return {200, *hit};
  try {
    const auto& corpus = *corpora_[static_cast<std::size_t>(s)];
    auto body = dump_json(to_json(pivot_profile(whole(corpus), lemma, report_.config.context, min_joint,
                                                report_.config.pos_filter, workers_)));
    cache_.put(key, body);
    return {200, std::move(body)};
  } catch (const Error& e) {
    if (e.kind() == errors::kPivotAbsent) return error_response(404, e.kind(), e.what());
    return error_response(400, e.kind(), e.what());
  }
}

struct ExplorerServer::Impl {
  explicit Impl(const Explorer& e) : explorer(e) {}
  const Explorer& explorer;
  httplib::Server server;
};

ExplorerServer::ExplorerServer(const Explorer& explorer) : impl_(std::make_unique<Impl>(explorer)) {
  auto& server = impl_->server;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto r = impl_->explorer.handle(req.path, query);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  });
}

ExplorerServer::~ExplorerServer() { stop(); }

int ExplorerServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(errors::kIoError, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(errors::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ExplorerServer::listen() { impl_->server.listen_after_bind(); }

void ExplorerServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace logometre
