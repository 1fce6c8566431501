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

#ifndef GDSRE_ANNOTATION_SERVER_H_
#define GDSRE_ANNOTATION_SERVER_H_

#include <memory>
#include <string>

#include "gdsre/annotation.h"

namespace gdsre {

// Serves the annotation protocol over HTTP on a local socket. Every endpoint
// accepts POST with a JSON body; next-item, agreement, disagreements and
// export also accept GET with query parameters. The annotator token travels
// in the X-Annotator-Token header.
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationService &service);
  ~AnnotationServer();

  // Binds to host:port (port 0 picks a free port) and returns the port.
  int Bind(const std::string &host, int port);

  // Blocks until Stop() is called.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gdsre

#endif  // GDSRE_ANNOTATION_SERVER_H_
