#ifndef CONTRAST_ADAPTER_HPP
#define CONTRAST_ADAPTER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "contrast/error.hpp"
#include "contrast/mrs.hpp"

namespace contrast::adapter {

// Where the parser/generator lives: an external command spoken to over the
// line protocol, or a fixture file served in-process.
struct Endpoint {
  enum class Transport { Command, Fixtures };
  Transport transport = Transport::Fixtures;
  std::string target;       // command line or fixture file path
  int timeout_ms = 10000;   // per request; a timed-out request is retried once
};

struct AdapterError : Error {
  enum class Kind { Unavailable, Protocol, Timeout, Backend };
  Kind kind;
  AdapterError(Kind kind, const std::string& what);
};

// One connection. Requests are strictly serial; instances are not shared
// across threads -- open one per worker.
class Adapter {
 public:
  virtual ~Adapter() = default;

  // Zero or more analyses, best first. Zero parses is a normal outcome.
  virtual std::vector<mrs::Mrs> parse(const std::string& sentence) = 0;

  // Zero or more surfaces; zero means the grammar rejects the input.
  virtual std::vector<std::string> generate(const mrs::Mrs& m) = 0;

  // Remote scoring over the same protocol (SCORE command).
  virtual double score(const std::string& sentence) = 0;
};

// Immutable record store loaded from a fixture file. The file is a
// transcript of protocol exchanges:
//
//   PARSE\t<sentence>        GENERATE\t<simple-mrs>     SCORE\t<sentence>
//   MRS\t<simple-mrs>        SENT\t<surface>            VAL\t<decimal>
//   ...                      ...                        END
//   END                      END
//
// '#' comment lines and blank lines are ignored. GENERATE keys are matched
// by canonical serialization, so spacing in the file does not matter.
class FixtureData {
 public:
  static std::shared_ptr<const FixtureData> load(const std::string& path);

  const std::vector<mrs::Mrs>* parses(const std::string& sentence) const;
  const std::vector<std::string>* surfaces(const std::string& mrs_key) const;
  const double* score(const std::string& sentence) const;

 private:
  std::map<std::string, std::vector<mrs::Mrs>> parses_;
  std::map<std::string, std::vector<std::string>> surfaces_;
  std::map<std::string, double> scores_;
};

class FixtureAdapter : public Adapter {
 public:
  explicit FixtureAdapter(std::shared_ptr<const FixtureData> data)
      : data_(std::move(data)) {}

  std::vector<mrs::Mrs> parse(const std::string& sentence) override;
  std::vector<std::string> generate(const mrs::Mrs& m) override;
  double score(const std::string& sentence) override;

 private:
  std::shared_ptr<const FixtureData> data_;
};

// Speaks the line protocol to a spawned child process, lockstep
// request/response. The command line is split on whitespace; no shell.
class SubprocessAdapter : public Adapter {
 public:
  explicit SubprocessAdapter(std::string command, int timeout_ms);
  ~SubprocessAdapter() override;

  SubprocessAdapter(const SubprocessAdapter&) = delete;
  SubprocessAdapter& operator=(const SubprocessAdapter&) = delete;

  std::vector<mrs::Mrs> parse(const std::string& sentence) override;
  std::vector<std::string> generate(const mrs::Mrs& m) override;
  double score(const std::string& sentence) override;

 private:
  struct Reply {
    std::vector<std::string> mrs_lines;
    std::vector<std::string> sent_lines;
    std::vector<std::string> val_lines;
  };

  void spawn();
  void shutdown();
  Reply request(const std::string& verb, const std::string& payload);
  Reply request_once(const std::string& verb, const std::string& payload);
  std::string read_line();

  std::string command_;
  int timeout_ms_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

std::unique_ptr<Adapter> open_adapter(const Endpoint& ep);

}  // namespace contrast::adapter

#endif
