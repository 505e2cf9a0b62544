#pragma once

#include <memory>
#include <string>

#include "scafnav/service.h"

namespace scafnav {

// HTTP binding of QueryService. Read-only, CORS open.
class HttpServer {
public:
  explicit HttpServer(const QueryService &service);
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws
  // Error(kBindError).
  int bind(const std::string &address, int port);
  // Serves until stop(). Blocks.
  void listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Binds, then serves until SIGINT or SIGTERM.
void serve(const QueryService &service, const std::string &address, int port);

}  // namespace scafnav
