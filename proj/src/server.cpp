#include "bibrec/server.hpp"

#include <charconv>

#include <httplib.h>

#include "bibrec/error.hpp"

namespace bibrec {
namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, kJson);
}

// Positive integer parameter; nullopt when absent, throws InvalidQueryError
// when malformed.
std::optional<std::size_t> positive_param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    const std::string v = req.get_param_value(name);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || out == 0)
        throw InvalidQueryError(std::string("parameter ") + name + " must be a positive integer");
    return out;
}

}  // namespace

HttpService::HttpService(std::shared_ptr<const Engine> engine)
    : engine_(std::move(engine)), server_(std::make_unique<httplib::Server>()) {
    auto& srv = *server_;
    const std::string origin = engine_->config().cors_origin;

    srv.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        if (origin.empty()) return;
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send(res, error_response(500, what));
    });

    srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(render_body({{"status", "ok"}}), kJson);
    });

    srv.Get("/search", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            SearchRequest request;
            request.q = req.get_param_value("q");
            if (req.has_param("rerank")) {
                const auto name = req.get_param_value("rerank");
                const auto strategy = parse_strategy(name);
                if (!strategy)
                    throw InvalidQueryError("unknown rerank \"" + name + "\"; expected tfidf, bradford or centrality");
                request.rerank = *strategy;
            }
            if (req.has_param("expand")) request.expand = split_expansion(req.get_param_value("expand"));
            request.limit = positive_param(req, "limit");
            send(res, handle_search(*engine_, request));
        } catch (const InvalidQueryError& e) {
            send(res, error_response(400, e.what()));
        }
    });

    srv.Get(R"(/recommend/(terms|journals|authors))", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            RecommendRequest request;
            request.kind = *parse_recommendation_kind(req.matches[1].str());
            request.q = req.get_param_value("q");
            request.k = positive_param(req, "k");
            send(res, handle_recommend(*engine_, request));
        } catch (const InvalidQueryError& e) {
            send(res, error_response(400, e.what()));
        }
    });

    srv.Post("/evaluate", [](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_evaluate(req.body));
    });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen() { return server_->listen_after_bind(); }

void HttpService::stop() {
    if (server_) server_->stop();
}

bool HttpService::running() const { return server_->is_running(); }

}  // namespace bibrec
