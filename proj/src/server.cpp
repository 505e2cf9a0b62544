#include "scafnav/server.h"

#include <atomic>
#include <chrono>
#include <csignal>
#include <thread>

#include <httplib.h>

namespace scafnav {

struct HttpServer::Impl {
  const QueryService &service;
  httplib::Server server;

  explicit Impl(const QueryService &s) : service(s) {
    server.set_default_headers({
        { "Access-Control-Allow-Origin", "*" },
        { "Access-Control-Allow-Methods", "GET, POST, OPTIONS" },
        { "Access-Control-Allow-Headers", "Content-Type" },
    });
    auto handler = [this](const httplib::Request &req, httplib::Response &res) {
      std::map<std::string, std::string> query;
      for (const auto &[k, v]: req.params)
        query.try_emplace(k, v);
      const ApiResponse r =
          service.handle(req.method, req.path, query, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Get(R"(/v1/.*)", handler);
    server.Post(R"(/v1/.*)", handler);
    server.Options(R"(/v1/.*)", [](const httplib::Request &,
                                   httplib::Response &res) {
      res.status = 204;
    });
  }
};

HttpServer::HttpServer(const QueryService &service)
    : impl_(std::make_unique<Impl>(service)) { }

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string &address, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(address);
  } else if (impl_->server.bind_to_port(address, port)) {
    bound = port;
  }
  if (bound <= 0)
    throw Error(ErrorCode::kBindError,
                "cannot bind " + address + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

namespace {
std::atomic<bool> g_stop_requested { false };
extern "C" void on_signal(int) { g_stop_requested = true; }
}  // namespace

void serve(const QueryService &service, const std::string &address, int port) {
  HttpServer server(service);
  server.bind(address, port);
  g_stop_requested = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::atomic<bool> done { false };
  std::thread watcher([&] {
    while (!done) {
      if (g_stop_requested) {
        server.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  server.listen();
  done = true;
  watcher.join();
}

}  // namespace scafnav
