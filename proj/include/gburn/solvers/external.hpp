#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gburn/errors.hpp"
#include "gburn/formulations.hpp"

namespace gburn {

/// How to run an external MILP solver: an argv template with {in} (the LP
/// file) and {out} (the solution file) placeholders, plus the line marking
/// an infeasible model in the solution file.
struct ExternalProfile {
  std::string name = "plain";
  std::vector<std::string> command;
  std::string infeasible_marker = "infeasible";

  void check() const {
    if (command.empty()) throw ParameterError("external command template is empty");
    bool in = false, out = false;
    for (const auto& a : command) {
      in = in || a.find("{in}") != std::string::npos;
      out = out || a.find("{out}") != std::string::npos;
    }
    if (!in || !out) throw ParameterError("external command template needs both {in} and {out} placeholders");
  }
};

/// Presets. "plain" expects the user's command; "cbc" wraps COIN-OR CBC.
inline ExternalProfile external_preset(const std::string& name, std::vector<std::string> command = {}) {
  ExternalProfile p;
  p.name = name;
  if (name == "plain") {
    p.command = std::move(command);
  } else if (name == "cbc") {
    p.command = command.empty() ? std::vector<std::string>{"cbc", "{in}", "solve", "solu", "{out}"} : std::move(command);
    p.infeasible_marker = "Infeasible";
  } else {
    throw ParameterError("unknown external solver profile '" + name + "' (known: plain, cbc)");
  }
  return p;
}

inline std::string substitute(std::string s, const std::string& key, const std::string& value) {
  for (std::size_t pos = 0; (pos = s.find(key, pos)) != std::string::npos; pos += value.size())
    s.replace(pos, key.size(), value);
  return s;
}

inline std::vector<std::string> expand_command(const ExternalProfile& p, const std::string& in, const std::string& out) {
  p.check();
  std::vector<std::string> argv;
  for (const auto& a : p.command) argv.push_back(substitute(substitute(a, "{in}", in), "{out}", out));
  return argv;
}

struct ExternalSolution {
  bool infeasible = false;
  Assignment assignment;
};

/// Solution file: lines holding a variable name followed by its value; any
/// other token before the name (an index, say) is skipped. Unlisted variables
/// are 0. A line containing the profile's marker means infeasible.
inline ExternalSolution parse_solution(std::istream& in, const LinearModel& m, const std::string& infeasible_marker) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < m.variables.size(); ++k) index[m.variables[k].name] = k;
  ExternalSolution s;
  s.assignment.values.assign(m.variables.size(), 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!infeasible_marker.empty() && line.find(infeasible_marker) != std::string::npos) {
      s.infeasible = true;
      return s;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    for (std::size_t t = 0; t + 1 < tok.size(); ++t) {
      auto it = index.find(tok[t]);
      if (it == index.end()) continue;
      char* end = nullptr;
      errno = 0;
      double v = std::strtod(tok[t + 1].c_str(), &end);
      if (errno || end == tok[t + 1].c_str() || *end != '\0' || !std::isfinite(v))
        throw FormatError("line " + std::to_string(lineno) + ": bad value '" + tok[t + 1] + "' for " + tok[t]);
      s.assignment.values[it->second] = v;
      break;
    }
  }
  s.assignment.objective = evaluate_objective(m, s.assignment.values);
  return s;
}

struct ProcessResult {
  int exit_code = 0;
  std::string output;
};

/// fork/exec with stdout and stderr captured through a pipe.
inline ProcessResult run_process(const std::vector<std::string>& argv) {
  int fds[2];
  if (pipe(fds) != 0) throw BackendError(std::string("pipe failed: ") + std::strerror(errno));
  pid_t pid = fork();
  if (pid < 0) throw BackendError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(fds[1], 1);
    dup2(fds[1], 2);
    close(fds[0]);
    close(fds[1]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    std::fprintf(stderr, "cannot execute %s: %s\n", args[0], std::strerror(errno));
    _exit(127);
  }
  close(fds[1]);
  ProcessResult r;
  char buf[4096];
  for (ssize_t k; (k = read(fds[0], buf, sizeof buf)) != 0;) {
    if (k < 0) {
      if (errno == EINTR) continue;
      break;
    }
    r.output.append(buf, static_cast<std::size_t>(k));
  }
  close(fds[0]);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {}
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  return r;
}

/// Writes the model as LP, runs the solver, reads the solution back. The
/// objective is recomputed here, never taken from the solver.
inline ExternalSolution external_solve(const LinearModel& m, const ExternalProfile& p,
                                       std::filesystem::path workdir = {}) {
  p.check();
  bool own_dir = workdir.empty();
  if (own_dir) {
    std::string tmpl = (std::filesystem::temp_directory_path() / "gburn-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw BackendError("cannot create a temporary directory");
    workdir = tmpl;
  }
  auto in = workdir / "model.lp", out = workdir / "model.sol";
  write_lp(m, in);
  std::filesystem::remove(out);
  auto proc = run_process(expand_command(p, in.string(), out.string()));
  auto cleanup = [&] {
    if (own_dir) std::filesystem::remove_all(workdir);
  };
  if (proc.exit_code != 0) {
    cleanup();
    throw BackendError("external solver exited with code " + std::to_string(proc.exit_code) + ":\n" + proc.output);
  }
  std::ifstream f(out);
  if (!f) {
    cleanup();
    throw FormatError("external solver wrote no solution file " + out.string());
  }
  ExternalSolution s;
  try {
    s = parse_solution(f, m, p.infeasible_marker);
  } catch (...) {
    cleanup();
    throw;
  }
  cleanup();
  return s;
}

}  // namespace gburn
