/* Copyright 2026 The SMSMix Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "smsmix/process_adapter.hpp"

#include <csignal>
#include <cstring>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "smsmix/error.hpp"

namespace smsmix {
namespace {

using Json = nlohmann::json;

Json parse_reply(const std::string& line, const std::string& command) {
  Json reply;
  try {
    reply = Json::parse(line);
  } catch (const Json::exception& e) {
    throw BackendError("adapter '" + command + "' sent invalid JSON: " +
                       e.what());
  }
  if (!reply.is_object()) {
    throw BackendError("adapter '" + command + "' reply is not an object");
  }
  if (reply.contains("error")) {
    throw BackendError("adapter '" + command +
                       "' error: " + reply["error"].dump());
  }
  return reply;
}

template <typename T>
T field(const Json& reply, const char* name, const std::string& command) {
  try {
    return reply.at(name).get<T>();
  } catch (const Json::exception& e) {
    throw BackendContractViolation("adapter '" + command + "' reply lacks '" +
                                   name + "': " + e.what());
  }
}

}  // namespace

ProcessAdapter::ProcessAdapter(const std::string& command) : command_(command) {
  std::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw BackendError("cannot create pipes for adapter: " +
                       std::string(std::strerror(errno)));
  }
  child_ = fork();
  if (child_ < 0) {
    throw BackendError("cannot fork adapter: " +
                       std::string(std::strerror(errno)));
  }
  if (child_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = fdopen(in_pipe[1], "w");
  from_child_ = fdopen(out_pipe[0], "r");
  try {
    const Json reply = parse_reply(call(R"({"op":"hello"})"), command_);
    dimension_ = field<std::size_t>(reply, "dimension", command_);
  } catch (...) {
    shutdown();
    throw;
  }
}

ProcessAdapter::~ProcessAdapter() { shutdown(); }

void ProcessAdapter::shutdown() {
  if (to_child_) {
    std::fclose(to_child_);
    to_child_ = nullptr;
  }
  if (from_child_) {
    std::fclose(from_child_);
    from_child_ = nullptr;
  }
  if (child_ > 0) {
    int status = 0;
    waitpid(child_, &status, 0);
    child_ = -1;
  }
}

std::string ProcessAdapter::call(const std::string& request) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (std::fputs(request.c_str(), to_child_) < 0 ||
      std::fputc('\n', to_child_) == EOF || std::fflush(to_child_) != 0) {
    throw BackendError("adapter '" + command_ + "' is unreachable (write)");
  }
  std::string line;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF && c != '\n') {
    line.push_back(static_cast<char>(c));
  }
  if (c == EOF && line.empty()) {
    throw BackendError("adapter '" + command_ + "' is unreachable (EOF)");
  }
  return line;
}

SaliencyVector ProcessAdapter::token_saliency(
    const AnnotatedInstance& instance,
    std::span<const SenseEntry> candidates) const {
  Json req;
  req["op"] = "saliency";
  req["tokens"] = instance.sentence->tokens;
  req["target_index"] = instance.target_index;
  req["lemma"] = instance.lemma;
  req["pos"] = to_string(instance.pos);
  req["gold"] = instance.gold.value;
  req["candidates"] = Json::array();
  for (const auto& c : candidates) {
    req["candidates"].push_back({{"key", c.key.value}, {"gloss", c.gloss}});
  }
  const Json reply = parse_reply(call(req.dump()), command_);
  return field<SaliencyVector>(reply, "scores", command_);
}

Infills ProcessAdapter::infill(const MaskedText& masked) const {
  Json req;
  req["op"] = "infill";
  req["tokens"] = masked.tokens;
  req["sentinel_positions"] = masked.sentinel_positions;
  const Json reply = parse_reply(call(req.dump()), command_);
  return field<Infills>(reply, "infills", command_);
}

bool ProcessAdapter::accept(const Sentence& sentence) const {
  Json req;
  req["op"] = "accept";
  req["tokens"] = sentence.tokens;
  const Json reply = parse_reply(call(req.dump()), command_);
  return field<bool>(reply, "accept", command_);
}

std::vector<double> ProcessAdapter::encode(const Sentence& sentence,
                                           std::size_t target_index) const {
  Json req;
  req["op"] = "encode";
  req["tokens"] = sentence.tokens;
  req["target_index"] = target_index;
  const Json reply = parse_reply(call(req.dump()), command_);
  return field<std::vector<double>>(reply, "vector", command_);
}

}  // namespace smsmix
