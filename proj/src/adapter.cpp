#include "contrast/adapter.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace contrast::adapter {

AdapterError::AdapterError(Kind kind, const std::string& what)
    : Error(what), kind(kind) {}

namespace {

void check_sentence(const std::string& sentence) {
  if (sentence.find('\n') != std::string::npos ||
      sentence.find('\t') != std::string::npos)
    throw AdapterError(AdapterError::Kind::Protocol,
                       "sentence contains a tab or newline");
}

std::string canonical_key(const std::string& mrs_text, const std::string& where) {
  try {
    return mrs::serialize_simple_mrs(mrs::parse_simple_mrs(mrs_text));
  } catch (const Error& e) {
    throw Error(where + ": bad MRS: " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixture data

std::shared_ptr<const FixtureData> FixtureData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw AdapterError(AdapterError::Kind::Unavailable,
                       "cannot open fixture file " + path);
  auto data = std::make_shared<FixtureData>();
  std::string line;
  int lineno = 0;
  std::string verb, key;
  std::vector<std::string> body;
  bool in_record = false;

  auto where = [&] { return path + ":" + std::to_string(lineno); };
  auto finish = [&] {
    if (verb == "PARSE") {
      auto& parses = data->parses_[key];
      parses.clear();
      for (const auto& text : body) {
        try {
          parses.push_back(mrs::parse_simple_mrs(text));
        } catch (const Error& e) {
          throw Error(where() + ": bad MRS for \"" + key + "\": " + e.what());
        }
      }
    } else if (verb == "GENERATE") {
      data->surfaces_[canonical_key(key, where())] = body;
    } else {
      if (body.size() != 1)
        throw Error(where() + ": SCORE record needs exactly one VAL line");
      data->scores_[key] = std::stod(body.front());
    }
    in_record = false;
    body.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!in_record && (line.empty() || line[0] == '#')) continue;
    if (!in_record) {
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw Error(where() + ": expected VERB<TAB>payload, got \"" + line + "\"");
      verb = line.substr(0, tab);
      key = line.substr(tab + 1);
      if (verb != "PARSE" && verb != "GENERATE" && verb != "SCORE")
        throw Error(where() + ": unknown verb \"" + verb + "\"");
      in_record = true;
      continue;
    }
    if (line == "END") {
      finish();
      continue;
    }
    auto tab = line.find('\t');
    std::string tag = tab == std::string::npos ? line : line.substr(0, tab);
    std::string payload = tab == std::string::npos ? "" : line.substr(tab + 1);
    if ((verb == "PARSE" && tag != "MRS") ||
        (verb == "GENERATE" && tag != "SENT") ||
        (verb == "SCORE" && tag != "VAL"))
      throw Error(where() + ": unexpected line \"" + line + "\" in " + verb +
                  " record");
    body.push_back(payload);
  }
  if (in_record) throw Error(path + ": unterminated record (missing END)");
  return data;
}

const std::vector<mrs::Mrs>* FixtureData::parses(const std::string& s) const {
  auto it = parses_.find(s);
  return it == parses_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* FixtureData::surfaces(const std::string& k) const {
  auto it = surfaces_.find(k);
  return it == surfaces_.end() ? nullptr : &it->second;
}

const double* FixtureData::score(const std::string& s) const {
  auto it = scores_.find(s);
  return it == scores_.end() ? nullptr : &it->second;
}

std::vector<mrs::Mrs> FixtureAdapter::parse(const std::string& sentence) {
  check_sentence(sentence);
  const auto* parses = data_->parses(sentence);
  return parses ? *parses : std::vector<mrs::Mrs>{};
}

std::vector<std::string> FixtureAdapter::generate(const mrs::Mrs& m) {
  const auto* surfaces = data_->surfaces(mrs::serialize_simple_mrs(m));
  return surfaces ? *surfaces : std::vector<std::string>{};
}

double FixtureAdapter::score(const std::string& sentence) {
  check_sentence(sentence);
  const double* v = data_->score(sentence);
  if (!v)
    throw AdapterError(AdapterError::Kind::Backend,
                       "no score recorded for \"" + sentence + "\"");
  return *v;
}

// ---------------------------------------------------------------------------
// Subprocess transport

SubprocessAdapter::SubprocessAdapter(std::string command, int timeout_ms)
    : command_(std::move(command)), timeout_ms_(timeout_ms) {
  if (timeout_ms_ <= 0) throw Error("adapter timeout must be positive");
  // a dead child must surface as EPIPE, not kill the process
  static const auto ignore_sigpipe = signal(SIGPIPE, SIG_IGN);
  (void)ignore_sigpipe;
  spawn();
}

SubprocessAdapter::~SubprocessAdapter() { shutdown(); }

void SubprocessAdapter::spawn() {
  std::vector<std::string> argv_strings;
  std::istringstream split(command_);
  std::string word;
  while (split >> word) argv_strings.push_back(word);
  if (argv_strings.empty())
    throw AdapterError(AdapterError::Kind::Unavailable, "empty adapter command");

  int to_child[2], from_child[2], exec_fail[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0 || pipe(exec_fail) != 0)
    throw AdapterError(AdapterError::Kind::Unavailable,
                       std::string("pipe: ") + std::strerror(errno));
  fcntl(exec_fail[1], F_SETFD, FD_CLOEXEC);

  pid_t pid = fork();
  if (pid < 0)
    throw AdapterError(AdapterError::Kind::Unavailable,
                       std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    close(exec_fail[0]);
    std::vector<char*> argv;
    for (auto& s : argv_strings) argv.push_back(s.data());
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    int err = errno;
    [[maybe_unused]] auto n = write(exec_fail[1], &err, sizeof err);
    _exit(127);
  }

  close(to_child[0]);
  close(from_child[1]);
  close(exec_fail[1]);

  int err = 0;
  if (read(exec_fail[0], &err, sizeof err) == sizeof err) {
    close(exec_fail[0]);
    close(to_child[1]);
    close(from_child[0]);
    waitpid(pid, nullptr, 0);
    throw AdapterError(AdapterError::Kind::Unavailable,
                       "cannot spawn \"" + command_ +
                           "\": " + std::strerror(err));
  }
  close(exec_fail[0]);

  pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
  buffer_.clear();
}

void SubprocessAdapter::shutdown() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    // closing stdin usually suffices; escalate if the child lingers
    for (int i = 0; i < 20; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) != 0) {
        pid_ = -1;
        return;
      }
      usleep(10000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

std::string SubprocessAdapter::read_line() {
  while (true) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    struct pollfd pfd{from_child_, POLLIN, 0};
    int ready = poll(&pfd, 1, timeout_ms_);
    if (ready == 0)
      throw AdapterError(AdapterError::Kind::Timeout,
                         "adapter reply timed out after " +
                             std::to_string(timeout_ms_) + " ms");
    if (ready < 0)
      throw AdapterError(AdapterError::Kind::Protocol,
                         std::string("poll: ") + std::strerror(errno));
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0)
      throw AdapterError(AdapterError::Kind::Protocol,
                         std::string("read: ") + std::strerror(errno));
    if (n == 0)
      throw AdapterError(AdapterError::Kind::Protocol,
                         "adapter closed the connection mid-reply");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

SubprocessAdapter::Reply SubprocessAdapter::request_once(
    const std::string& verb, const std::string& payload) {
  std::string line = verb + "\t" + payload + "\n";
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t n = write(to_child_, p, left);
    if (n < 0) {
      if (errno == EPIPE)
        throw AdapterError(AdapterError::Kind::Unavailable,
                           "adapter process is gone");
      throw AdapterError(AdapterError::Kind::Protocol,
                         std::string("write: ") + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }

  Reply reply;
  while (true) {
    std::string got = read_line();
    if (got == "END") return reply;
    auto tab = got.find('\t');
    std::string tag = tab == std::string::npos ? got : got.substr(0, tab);
    std::string body = tab == std::string::npos ? "" : got.substr(tab + 1);
    if (tag == "ERR")
      throw AdapterError(AdapterError::Kind::Backend, "adapter error: " + body);
    if (tag == "MRS" && verb == "PARSE")
      reply.mrs_lines.push_back(body);
    else if (tag == "SENT" && verb == "GENERATE")
      reply.sent_lines.push_back(body);
    else if (tag == "VAL" && verb == "SCORE")
      reply.val_lines.push_back(body);
    else
      throw AdapterError(AdapterError::Kind::Protocol,
                         "unexpected reply line \"" + got + "\" to " + verb);
  }
}

SubprocessAdapter::Reply SubprocessAdapter::request(const std::string& verb,
                                                    const std::string& payload) {
  try {
    return request_once(verb, payload);
  } catch (const AdapterError& e) {
    if (e.kind != AdapterError::Kind::Timeout) throw;
    // one retry on a fresh connection, then report
    shutdown();
    spawn();
    return request_once(verb, payload);
  }
}

std::vector<mrs::Mrs> SubprocessAdapter::parse(const std::string& sentence) {
  check_sentence(sentence);
  Reply reply = request("PARSE", sentence);
  std::vector<mrs::Mrs> out;
  for (const auto& text : reply.mrs_lines) {
    try {
      out.push_back(mrs::parse_simple_mrs(text));
    } catch (const Error& e) {
      throw AdapterError(AdapterError::Kind::Protocol,
                         std::string("unparseable MRS reply: ") + e.what());
    }
  }
  return out;
}

std::vector<std::string> SubprocessAdapter::generate(const mrs::Mrs& m) {
  Reply reply = request("GENERATE", mrs::serialize_simple_mrs(m));
  return reply.sent_lines;
}

double SubprocessAdapter::score(const std::string& sentence) {
  check_sentence(sentence);
  Reply reply = request("SCORE", sentence);
  if (reply.val_lines.size() != 1)
    throw AdapterError(AdapterError::Kind::Protocol,
                       "SCORE reply must carry exactly one VAL line");
  try {
    return std::stod(reply.val_lines.front());
  } catch (const std::exception&) {
    throw AdapterError(AdapterError::Kind::Protocol,
                       "bad VAL payload \"" + reply.val_lines.front() + "\"");
  }
}

std::unique_ptr<Adapter> open_adapter(const Endpoint& ep) {
  if (ep.timeout_ms <= 0) throw Error("adapter timeout must be positive");
  if (ep.transport == Endpoint::Transport::Command)
    return std::make_unique<SubprocessAdapter>(ep.target, ep.timeout_ms);
  return std::make_unique<FixtureAdapter>(FixtureData::load(ep.target));
}

}  // namespace contrast::adapter
