// Copyright 2026 The gdsre Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gdsre/annotation-server.h"

#include "httplib.h"

namespace gdsre {

using nlohmann::json;

struct AnnotationServer::Impl {
  explicit Impl(AnnotationService &s) : service(s) {}
  AnnotationService &service;
  httplib::Server server;
};

namespace {

constexpr const char *kEndpoints[] = {"create-task",   "next-item",  "submit-label", "agreement",
                                      "disagreements", "adjudicate", "export"};

void Reply(httplib::Response &res, const ProtocolResponse &out) {
  res.status = out.status;
  res.set_content(out.body.dump(), "application/json");
}

}  // namespace

AnnotationServer::AnnotationServer(AnnotationService &service)
    : impl_(std::make_unique<Impl>(service)) {
  httplib::Server &srv = impl_->server;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type, X-Annotator-Token"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  for (const char *endpoint : kEndpoints) {
    const std::string path = std::string("/") + endpoint;
    const std::string name = endpoint;
    srv.Post(path, [this, name](const httplib::Request &req, httplib::Response &res) {
      json body = req.body.empty() ? json::object() : json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        Reply(res, {400, ErrorToJson(Error(ErrorCode::kInvalidArgument, "body is not JSON"))});
        return;
      }
      Reply(res, HandleRequest(impl_->service, name, body,
                               req.get_header_value("X-Annotator-Token")));
    });
    srv.Get(path, [this, name](const httplib::Request &req, httplib::Response &res) {
      json body = json::object();
      for (const auto &[k, v] : req.params) body[k] = v;
      Reply(res, HandleRequest(impl_->service, name, body,
                               req.get_header_value("X-Annotator-Token")));
    });
    srv.Options(path, [](const httplib::Request &, httplib::Response &res) { res.status = 204; });
  }
}

AnnotationServer::~AnnotationServer() { Stop(); }

int AnnotationServer::Bind(const std::string &host, int port) {
  if (port == 0) {
    int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void AnnotationServer::Listen() { impl_->server.listen_after_bind(); }

void AnnotationServer::Stop() { impl_->server.stop(); }

}  // namespace gdsre
