#pragma once

#include <memory>
#include <string>

#include "bibrec/api.hpp"

namespace httplib {
class Server;
}

namespace bibrec {

/// HTTP front end over a shared, immutable Engine.
///
///   GET  /search?q=&rerank=&expand=&limit=
///   GET  /recommend/{terms|journals|authors}?q=&k=
///   POST /evaluate            (assessment CSV body)
///   GET  /health
class HttpService {
public:
    explicit HttpService(std::shared_ptr<const Engine> engine);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Binds host:port (port 0 picks a free port) and returns the bound
    /// port, or -1 on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after a successful bind().
    bool listen();
    void stop();
    bool running() const;

private:
    std::shared_ptr<const Engine> engine_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace bibrec
