#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "pubindex/snapshot.hpp"

namespace pubindex::api {

inline constexpr std::size_t kDefaultLimit = 100;
inline constexpr std::size_t kMaxLimit = 1000;

struct Response {
  int status = 200;
  std::string content_type = "application/json; charset=utf-8";
  std::string body;
};

using Query = std::multimap<std::string, std::string>;

/// Answers a GET request entirely from `snapshot`. Unknown paths and ids give
/// 404, malformed pagination 400, both with a problem-detail body.
Response handle_get(const Snapshot& snapshot, std::string_view path, const Query& query = {});

}  // namespace pubindex::api

namespace pubindex {

/// HTTP front end: each request reads the store once and answers from that
/// snapshot only.
class ApiServer {
 public:
  explicit ApiServer(const SnapshotStore& store, std::optional<std::string> ui_dir = std::nullopt);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds and serves until stop(). Returns false if binding fails.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port; serve with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pubindex
