#pragma once

#include "logometre/report.hpp"

#include <array>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace logometre {

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// Fixed-capacity LRU map from request keys to serialized pivot profiles.
/// Safe for concurrent use.
class PivotCache {
public:
  explicit PivotCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, std::string value);
  std::size_t size() const;

private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<std::pair<std::string, std::string>> order_;  // most recent first
  std::unordered_map<std::string, decltype(order_)::iterator> index_;
};

inline constexpr std::size_t kPivotCacheCapacity = 256;

/// Read-only query service over a comparison report. Corpora are optional;
/// without them the pivot endpoint answers 503. Loading a corpus whose hash
/// differs from the one recorded in the report throws CorpusMismatch.
class Explorer {
public:
  Explorer(ComparisonReport report, std::optional<AnnotatedCorpus> corpus_a,
           std::optional<AnnotatedCorpus> corpus_b, std::size_t workers = 1);

  /// Routes a GET request. `query` holds decoded query parameters.
  HttpResponse handle(std::string_view path, const std::map<std::string, std::string>& query) const;

  const ComparisonReport& report() const noexcept { return report_; }
  std::size_t cached_pivots() const { return cache_.size(); }

private:
  HttpResponse meta() const;
  HttpResponse dict(const std::string& side, const std::map<std::string, std::string>& query) const;
  HttpResponse compare() const;
  HttpResponse ca(const std::string& side, const std::map<std::string, std::string>& query) const;
  HttpResponse pivot(const std::string& side, const std::map<std::string, std::string>& query) const;

  ComparisonReport report_;
  std::array<std::optional<AnnotatedCorpus>, 2> corpora_;
  std::size_t workers_;
  mutable PivotCache cache_{kPivotCacheCapacity};
};

/// HTTP front end for an Explorer (cpp-httplib). CORS is open for local UI
/// development.
class ExplorerServer {
public:
  explicit ExplorerServer(const Explorer& explorer);
  ~ExplorerServer();
  ExplorerServer(const ExplorerServer&) = delete;
  ExplorerServer& operator=(const ExplorerServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace logometre
