#include "mlss.h"

#include <new>
#include <string>

#include <json.hpp>

#include "mlss/certificate.hpp"
#include "mlss/parser.hpp"
#include "mlss/solver.hpp"

using nlohmann::json;

struct mlss_result {
  int status = MLSS_ERROR;
  std::string message;
  std::string model_text;
  std::string model_json;
  std::string certificate_json;
  std::string stats_json;
  std::string levels_json;
  bool has_model = false;
  bool has_certificate = false;
  bool has_stats = false;
  bool has_levels = false;
};

namespace {

mlss_result *make_error(int status, std::string msg) {
  auto *r = new (std::nothrow) mlss_result;
  if (!r)
    return nullptr;
  r->status = status;
  r->message = std::move(msg);
  return r;
}

std::string stats_to_json(const mlss::SolveStats &s) {
  json j;
  j["branches_explored"] = s.branches_explored;
  j["rule_applications"] = s.rule_applications;
  j["max_branch_size"] = s.max_branch_size;
  j["bound"] = s.bound;
  return j.dump();
}

void fill_model(mlss_result &r, const mlss::Valuation &m,
                const mlss::Formula &f) {
  json jm = json::object();
  std::string text;
  for (const std::string &x : vars(f)) { // std::set: identifier order
    std::string v = m(x).render();
    text += x + " = " + v + "\n";
    jm[x] = v;
  }
  r.model_text = std::move(text);
  r.model_json = jm.dump();
  r.has_model = true;
}

} // namespace

extern "C" {

const char *mlss_version(void) { return "0.1.0"; }

mlss_result *mlss_solve(const char *text, int typed,
                        unsigned long long budget, int debug) {
  if (!text)
    return make_error(MLSS_ERROR, "null input");
  try {
    mlss::ParseResult pr = mlss::parse(text);
    mlss::SolveOptions opts;
    opts.typed = typed != 0;
    opts.step_budget = budget;
    opts.debug_invariants = debug != 0;
    opts.check_typing_invariance = debug != 0 && typed != 0;
    mlss::Solver solver(opts);
    auto outcome = solver.decide(pr.formula, pr.flexible_empty_tags);

    auto *r = new mlss_result;
    r->stats_json = stats_to_json(solver.stats());
    r->has_stats = true;
    if (std::holds_alternative<mlss::Untypeable>(outcome)) {
      r->status = MLSS_ILL_TYPED;
      r->message = std::get<mlss::Untypeable>(outcome).reason;
      return r;
    }
    mlss::Verdict v = std::get<mlss::Verdict>(std::move(outcome));
    if (std::holds_alternative<mlss::Unsat>(v)) {
      r->status = MLSS_UNSAT;
      r->certificate_json =
          certificate_to_json(std::get<mlss::Unsat>(v).certificate);
      r->has_certificate = true;
    } else {
      r->status = MLSS_SAT;
      fill_model(*r, std::get<mlss::Sat>(v).model, pr.formula);
    }
    return r;
  } catch (const mlss::ParseError &e) {
    return make_error(MLSS_ERROR, e.what());
  } catch (const mlss::InternalError &e) {
    return make_error(MLSS_INTERNAL, e.what());
  } catch (const std::exception &e) {
    return make_error(MLSS_INTERNAL, e.what());
  }
}

mlss_result *mlss_check(const char *text, const char *certificate_json) {
  if (!text || !certificate_json)
    return make_error(MLSS_ERROR, "null input");
  try {
    mlss::ParseResult pr = mlss::parse(text);
    mlss::Certificate cert = mlss::certificate_from_json(certificate_json);
    mlss::CheckResult res =
        mlss::check_certificate(pr.formula, cert, pr.flexible_empty_tags);
    auto *r = new mlss_result;
    r->status = res.accepted ? MLSS_OK : MLSS_REJECT;
    r->message = res.reason;
    return r;
  } catch (const mlss::ParseError &e) {
    return make_error(MLSS_ERROR, e.what());
  } catch (const mlss::CertificateFormatError &e) {
    return make_error(MLSS_ERROR, e.what());
  } catch (const std::exception &e) {
    return make_error(MLSS_INTERNAL, e.what());
  }
}

mlss_result *mlss_infer(const char *text) {
  if (!text)
    return make_error(MLSS_ERROR, "null input");
  try {
    mlss::ParseResult pr = mlss::parse(text);
    auto outcome = mlss::infer(pr.formula, pr.flexible_empty_tags);
    auto *r = new mlss_result;
    if (std::holds_alternative<mlss::Untypeable>(outcome)) {
      r->status = MLSS_ILL_TYPED;
      r->message = std::get<mlss::Untypeable>(outcome).reason;
      return r;
    }
    const mlss::Inference &inf = std::get<mlss::Inference>(outcome);
    json j;
    j["variables"] = json::object();
    for (const auto &[x, l] : inf.env.var_levels)
      j["variables"][x] = l;
    j["empty_levels"] = json::object();
    for (const auto &[tag, l] : inf.env.empty_levels)
      j["empty_levels"][std::to_string(tag)] = l;
    j["urelems"] = json::array();
    for (const mlss::Term &t : inf.urelems)
      j["urelems"].push_back(mlss::pretty(t));
    r->status = MLSS_OK;
    r->levels_json = j.dump();
    r->has_levels = true;
    return r;
  } catch (const mlss::ParseError &e) {
    return make_error(MLSS_ERROR, e.what());
  } catch (const std::exception &e) {
    return make_error(MLSS_INTERNAL, e.what());
  }
}

void mlss_result_free(mlss_result *r) { delete r; }

int mlss_result_status(const mlss_result *r) {
  return r ? r->status : MLSS_INTERNAL;
}

const char *mlss_result_message(const mlss_result *r) {
  return r && !r->message.empty() ? r->message.c_str() : nullptr;
}

const char *mlss_result_model_text(const mlss_result *r) {
  return r && r->has_model ? r->model_text.c_str() : nullptr;
}

const char *mlss_result_model_json(const mlss_result *r) {
  return r && r->has_model ? r->model_json.c_str() : nullptr;
}

const char *mlss_result_certificate_json(const mlss_result *r) {
  return r && r->has_certificate ? r->certificate_json.c_str() : nullptr;
}

const char *mlss_result_stats_json(const mlss_result *r) {
  return r && r->has_stats ? r->stats_json.c_str() : nullptr;
}

const char *mlss_result_levels_json(const mlss_result *r) {
  return r && r->has_levels ? r->levels_json.c_str() : nullptr;
}

} // extern "C"
