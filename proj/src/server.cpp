#include <httplib.h>

#include "pubindex/api.hpp"

namespace pubindex {

struct ApiServer::Impl {
  httplib::Server server;
};

ApiServer::ApiServer(const SnapshotStore& store, std::optional<std::string> ui_dir)
    : impl_(std::make_unique<Impl>()) {
  if (ui_dir) impl_->server.set_mount_point("/ui", *ui_dir);
  impl_->server.Get(R"(/.*)", [&store](const httplib::Request& req, httplib::Response& res) {
    const auto snapshot = store.get();
    if (!snapshot) {
      res.status = 503;
      res.set_content(R"({"type":"about:blank","title":"Service Unavailable","status":503,)"
                      R"("detail":"no snapshot loaded"})",
                      "application/problem+json; charset=utf-8");
      return;
    }
    api::Query query(req.params.begin(), req.params.end());
    const auto reply = api::handle_get(*snapshot, req.path, query);
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  });
  // read-only service
  const auto refuse = [](const httplib::Request&, httplib::Response& res) {
    res.status = 405;
    res.set_header("Allow", "GET");
    res.set_content(R"({"type":"about:blank","title":"Method Not Allowed","status":405,)"
                    R"("detail":"only GET is supported"})",
                    "application/problem+json; charset=utf-8");
  };
  impl_->server.Post(R"(/.*)", refuse);
  impl_->server.Put(R"(/.*)", refuse);
  impl_->server.Patch(R"(/.*)", refuse);
  impl_->server.Delete(R"(/.*)", refuse);
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int ApiServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool ApiServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace pubindex
