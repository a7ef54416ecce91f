#include "orbitkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "orbitkit/ops.hpp"
#include "orbitkit/scalar.hpp"

struct okt_ctx {
  std::string last_error;
};

namespace {

constexpr const char* kVersion = "0.1.0";

/// Copies a string into a malloc'd buffer released by okt_buffer_free.
char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void deliver(char** response_json, const std::string& payload) {
  if (response_json != nullptr) *response_json = dup_string(payload);
}

int fail(okt_ctx* ctx, char** response_json, int code, const char* kind,
         const std::string& detail) {
  if (ctx != nullptr) ctx->last_error = detail;
  orbitkit::ojson err;
  err["error"]["kind"] = kind;
  err["error"]["detail"] = detail;
  deliver(response_json, err.dump());
  return code;
}

}  // namespace

extern "C" {

okt_ctx* okt_ctx_new(void) { return new (std::nothrow) okt_ctx(); }

void okt_ctx_free(okt_ctx* ctx) { delete ctx; }

int okt_run(okt_ctx* ctx, const char* op, const char* request_json,
            char** response_json) {
  if (op == nullptr || request_json == nullptr)
    return fail(ctx, response_json, OKT_PARSE_ERROR, "parse",
                "null operation or request");
  try {
    orbitkit::ojson request =
        orbitkit::ojson::parse(std::string(request_json));
    orbitkit::ojson response = orbitkit::run_op(op, request);
    if (ctx != nullptr) ctx->last_error.clear();
    deliver(response_json, response.dump());
    return OKT_OK;
  } catch (const orbitkit::UnknownOpError& e) {
    return fail(ctx, response_json, OKT_UNKNOWN_OP, "unknown-op", e.what());
  } catch (const orbitkit::ParseError& e) {
    return fail(ctx, response_json, OKT_PARSE_ERROR, "parse", e.what());
  } catch (const orbitkit::DomainError& e) {
    return fail(ctx, response_json, OKT_DOMAIN_ERROR, "domain", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ctx, response_json, OKT_PARSE_ERROR, "parse", e.what());
  } catch (const std::exception& e) {
    return fail(ctx, response_json, OKT_DOMAIN_ERROR, "domain", e.what());
  }
}

const char* okt_last_error(const okt_ctx* ctx) {
  return ctx == nullptr ? "" : ctx->last_error.c_str();
}

void okt_buffer_free(char* buffer) { std::free(buffer); }

const char* okt_version(void) { return kVersion; }

int okt_op_count(void) {
  return static_cast<int>(orbitkit::op_names().size());
}

const char* okt_op_name(int index) {
  const auto& names = orbitkit::op_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<std::size_t>(index)].c_str();
}

}  // extern "C"
