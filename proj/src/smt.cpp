#include "hypermon/smt.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace hypermon::smt {

std::string_view toString(SatResult r) {
  switch (r) {
    case SatResult::Sat: return "sat";
    case SatResult::Unsat: return "unsat";
    case SatResult::Unknown: return "unknown";
  }
  return "unknown";
}

std::string SolverConfig::defaultCommand() {
  if (const char* env = std::getenv("HYPERMON_SOLVER"); env && *env) return env;
  return "z3 -in";
}

namespace {

/// Unlinked temporary file holding the script; the solver reads it as stdin.
int scriptFile(const std::string& script) {
  char path[] = "/tmp/hypermon-smt-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) throw SolverError(std::string("cannot create temporary file: ") + std::strerror(errno));
  unlink(path);
  std::size_t written = 0;
  while (written < script.size()) {
    const ssize_t n = write(fd, script.data() + written, script.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      close(fd);
      throw SolverError(std::string("cannot write query: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  lseek(fd, 0, SEEK_SET);
  return fd;
}

}  // namespace

SatResult check(const std::string& script, const SolverConfig& config) {
  const int input = scriptFile(script);
  int out[2];
  if (pipe(out) != 0) {
    close(input);
    throw SolverError(std::string("pipe failed: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(input);
    close(out[0]);
    close(out[1]);
    throw SolverError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(input, STDIN_FILENO);
    dup2(out[1], STDOUT_FILENO);
    dup2(out[1], STDERR_FILENO);
    close(input);
    close(out[0]);
    close(out[1]);
    execl("/bin/sh", "sh", "-c", config.command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(input);
  close(out[1]);

  std::string output;
  bool timedOut = false;
  const auto deadline = std::chrono::steady_clock::now() + config.timeout;
  char buffer[4096];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timedOut = true;
      break;
    }
    pollfd pfd{out[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) {
      timedOut = true;
      break;
    }
    const ssize_t n = read(out[0], buffer, sizeof buffer);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buffer, static_cast<std::size_t>(n));
  }
  close(out[0]);
  if (timedOut) kill(pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (timedOut) return SatResult::Unknown;

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string word = line.substr(b, e - b + 1);
    if (word == "sat") return SatResult::Sat;
    if (word == "unsat") return SatResult::Unsat;
    if (word == "unknown") return SatResult::Unknown;
    break;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverError("cannot launch solver '" + config.command + "'");
  std::string first = output.substr(0, output.find('\n'));
  if (first.size() > 200) first.resize(200);
  if (WIFEXITED(status) && WEXITSTATUS(status) != 0)
    throw SolverError("solver '" + config.command + "' exited with status " + std::to_string(WEXITSTATUS(status)) +
                      (first.empty() ? "" : ": " + first));
  throw SolverError("unexpected solver response: '" + first + "'");
}

bool available(const SolverConfig& config) {
  try {
    return check("(declare-const a Int)\n(assert (distinct a a))\n(check-sat)\n", config) == SatResult::Unsat;
  } catch (const SolverError&) {
    return false;
  }
}

Query buildQuery(const sym::Characterization& c, std::size_t i, const Integer& x, const Integer& y) {
  if (i < 1 || i > c.arity()) throw std::out_of_range("position out of range");
  Query q;
  std::ostringstream decls;
  std::ostringstream body;
  bool linear = true;

  for (std::size_t k = 0; k < c.arity(); ++k) {
    if (k + 1 == i) continue;
    decls << "(declare-const z" << k + 1 << " Int)\n";
    const Interval& d = c.domains[k];
    if (d.lo) body << "(assert (<= " << sym::toSmt(sym::intConst(*d.lo), {}) << " z" << k + 1 << "))\n";
    if (d.hi) body << "(assert (<= z" << k + 1 << " " << sym::toSmt(sym::intConst(*d.hi), {}) << "))\n";
  }

  for (int copy = 1; copy <= 2; ++copy) {
    sym::Assignment fixed(c.symbols.size());
    fixed[c.inputSymbols[i - 1]] = copy == 1 ? x : y;
    const auto name = [&](int id) {
      const auto& s = c.symbols[id];
      if (s.kind == sym::Symbol::Kind::Input) return "z" + std::to_string(s.position + 1);
      return "h" + std::to_string(copy) + "_" + std::to_string(id);
    };
    for (std::size_t id = 0; id < c.symbols.size(); ++id)
      if (c.symbols[id].kind == sym::Symbol::Kind::Havoc)
        decls << "(declare-const " << name(static_cast<int>(id)) << " Int)\n";
    decls << "(declare-const o" << copy << " Int)\n";

    std::string anyPath;
    for (const auto& p : c.paths) {
      const sym::TermPtr cond = sym::substitute(p.condition, fixed);
      if (sym::isFalse(cond)) continue;
      linear = linear && !sym::isNonlinear(cond);
      const std::string condText = sym::toSmt(cond, name);
      anyPath += " " + condText;
      if (p.havoc()) {
        q.havocOutput = true;
        continue;
      }
      const sym::TermPtr out = sym::substitute(p.output, fixed);
      linear = linear && !sym::isNonlinear(out);
      body << "(assert (=> " << condText << " (= o" << copy << " " << sym::toSmt(out, name) << ")))\n";
    }
    body << "(assert (or false" << anyPath << "))\n";
  }
  body << "(assert (distinct o1 o2))\n(check-sat)\n(exit)\n";
  q.script = std::string("(set-logic ") + (linear ? "QF_LIA" : "QF_NIA") + ")\n" + decls.str() + body.str();
  return q;
}

}  // namespace hypermon::smt
