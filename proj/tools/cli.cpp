#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlss.h"

namespace {

using nlohmann::json;

int fail(const std::string &category, const std::string &msg, int code) {
  std::cerr << "error:" << category << ":" << msg << "\n";
  return code;
}

bool read_file(const std::string &path, std::string &out) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct ResultGuard {
  mlss_result *r;
  ~ResultGuard() { mlss_result_free(r); }
};

std::string msg_of(const mlss_result *r) {
  const char *m = mlss_result_message(r);
  return m ? m : "unknown error";
}

int run_solve(const std::string &path, bool untyped, bool want_model,
              const std::string &cert_path, bool as_json,
              unsigned long long budget, bool debug) {
  std::string text;
  if (!read_file(path, text))
    return fail("io", "cannot read " + path, 1);

  mlss_result *r = mlss_solve(text.c_str(), untyped ? 0 : 1, budget, debug);
  ResultGuard g{r};
  int status = mlss_result_status(r);

  switch (status) {
  case MLSS_SAT:
  case MLSS_UNSAT:
    break;
  case MLSS_ILL_TYPED:
    if (as_json) {
      json j;
      j["status"] = "ill-typed";
      std::cout << j.dump() << "\n";
    }
    return fail("type", msg_of(r), 30);
  case MLSS_ERROR:
    return fail("parse", msg_of(r), 1);
  default:
    return fail("internal", msg_of(r), 70);
  }

  std::string written_cert;
  if (status == MLSS_UNSAT && !cert_path.empty()) {
    std::ofstream out(cert_path, std::ios::binary);
    const char *cert = mlss_result_certificate_json(r);
    if (!out || !cert || !(out << cert))
      return fail("io", "cannot write " + cert_path, 1);
    written_cert = cert_path;
  }

  if (as_json) {
    json j;
    j["status"] = status == MLSS_SAT ? "sat" : "unsat";
    if (status == MLSS_SAT && want_model)
      j["model"] = json::parse(mlss_result_model_json(r));
    if (!written_cert.empty())
      j["certificate_path"] = written_cert;
    j["stats"] = json::parse(mlss_result_stats_json(r));
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (status == MLSS_SAT ? "SAT" : "UNSAT") << "\n";
    if (status == MLSS_SAT && want_model)
      std::cout << mlss_result_model_text(r);
    if (!written_cert.empty())
      std::cout << "certificate: " << written_cert << "\n";
  }
  return status;
}

int run_check(const std::string &path, const std::string &cert_path) {
  std::string text, cert;
  if (!read_file(path, text))
    return fail("io", "cannot read " + path, 1);
  if (!read_file(cert_path, cert))
    return fail("io", "cannot read " + cert_path, 1);

  mlss_result *r = mlss_check(text.c_str(), cert.c_str());
  ResultGuard g{r};
  switch (mlss_result_status(r)) {
  case MLSS_OK:
    std::cout << "certificate OK\n";
    return 0;
  case MLSS_REJECT:
    return fail("certificate", msg_of(r), 2);
  case MLSS_ERROR:
    return fail("parse", msg_of(r), 1);
  default:
    return fail("internal", msg_of(r), 70);
  }
}

int run_infer(const std::string &path) {
  std::string text;
  if (!read_file(path, text))
    return fail("io", "cannot read " + path, 1);

  mlss_result *r = mlss_infer(text.c_str());
  ResultGuard g{r};
  switch (mlss_result_status(r)) {
  case MLSS_OK:
    break;
  case MLSS_ILL_TYPED:
    return fail("type", msg_of(r), 30);
  case MLSS_ERROR:
    return fail("parse", msg_of(r), 1);
  default:
    return fail("internal", msg_of(r), 70);
  }

  json j = json::parse(mlss_result_levels_json(r));
  for (const auto &[name, level] : j.at("variables").items())
    std::cout << "var " << name << " : " << level.get<long>() << "\n";
  for (const auto &[tag, level] : j.at("empty_levels").items())
    std::cout << "empty {}@" << tag << " : " << level.get<long>() << "\n";
  for (const auto &t : j.at("urelems"))
    std::cout << "urelem " << t.get<std::string>() << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"MLSS satisfiability solver"};
  app.require_subcommand(1);

  std::string solve_file, solve_cert;
  bool untyped = false, want_model = false, as_json = false, debug = false;
  unsigned long long budget = 0;
  CLI::App *solve = app.add_subcommand("solve", "decide satisfiability");
  solve->add_option("FILE", solve_file, "input formula file")->required();
  solve->add_flag("--untyped", untyped, "disable level inference");
  solve->add_flag("--model", want_model, "print a model when SAT");
  solve->add_option("--cert", solve_cert, "write a certificate when UNSAT");
  solve->add_flag("--json", as_json, "machine-readable report");
  solve->add_option("--budget", budget, "per-path step budget override");
  solve->add_flag("--debug-invariants", debug, "extra internal checks");

  std::string check_file, check_cert;
  CLI::App *check = app.add_subcommand("check", "replay a certificate");
  check->add_option("FILE", check_file, "input formula file")->required();
  check->add_option("--cert", check_cert, "certificate file")->required();

  std::string infer_file;
  CLI::App *infer = app.add_subcommand("infer", "print levels and urelements");
  infer->add_option("FILE", infer_file, "input formula file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) // --help
      return app.exit(e);
    std::ostringstream ss;
    ss << e.what();
    return fail("usage", ss.str(), 1);
  }

  if (solve->parsed())
    return run_solve(solve_file, untyped, want_model, solve_cert, as_json,
                     budget, debug);
  if (check->parsed())
    return run_check(check_file, check_cert);
  return run_infer(infer_file);
}
