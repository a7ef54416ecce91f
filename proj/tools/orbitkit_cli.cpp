// Batch command-line front end.  Every verb maps onto one library operation:
// the JSON request comes from --input (file or '-' for standard input), a few
// convenience flags merge into the request, and the response document is
// printed to standard output.  Exit status: 0 success, 2 domain error,
// 3 parse error, 64 unknown verb / usage error.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orbitkit.h"

namespace {

using ojson = nlohmann::ordered_json;

struct Leaf {
  std::string op;
  CLI::App* cmd = nullptr;
  std::string input;
  std::string nilpotent;
  std::string ambient;
  double tol = 0.0;
  bool exact = false;
  bool verify = false;
  int n = 0, m = 0;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
};

const std::map<std::string, std::string>& group_blurbs() {
  static const std::map<std::string, std::string> blurbs = {
      {"linalg", "Exact and floating-point matrix kernels"},
      {"symp", "Symplectic group, Siegel domain, decompositions"},
      {"heis", "Heisenberg group, dual space, coadjoint orbits"},
      {"rep", "Finite grid model of the irreducible representation"},
      {"sl2", "Triples: bases, completion, transforms"},
      {"jacobi", "Semidirect-product group, algebra, orbit geometry"},
      {"theta", "Lattice theta series, invariance, Fourier data"},
      {"orbit", "Orbit membership shortcut"},
  };
  return blurbs;
}

const std::map<std::string, std::string>& leaf_blurbs() {
  static const std::map<std::string, std::string> blurbs = {
      {"linalg pfaffian", "Pfaffian of a skew-symmetric rational matrix"},
      {"linalg exp", "Matrix exponential"},
      {"linalg logspd", "Principal log of a positive definite matrix"},
      {"linalg jordan", "Additive hyperbolic/elliptic/nilpotent splitting"},
      {"linalg classify", "Coarse spectral class of a matrix"},
      {"symp involution", "Transpose-inverse involution"},
      {"symp cartan", "Polar factorization k * exp(X)"},
      {"symp moebius", "Fractional-linear action on a domain point"},
      {"symp iwasawa", "Triangular-diagonal-compact factorization"},
      {"symp renormalize", "Re-project a drifted matrix onto the group"},
      {"heis mul", "Group product"},
      {"heis inv", "Group inverse"},
      {"heis bracket", "Convert second-coordinate data to product form"},
      {"heis diamond", "Product written in the second coordinates"},
      {"heis embed", "Matrix realization inside the symplectic group"},
      {"heis orbitclass", "Orbit type of a character pair"},
      {"heis mackey", "Two-factor splitting of an element"},
      {"heis pairing", "Functional applied to an algebra element"},
      {"heis coadjoint", "Coadjoint action on a functional"},
      {"heis bform", "Alternating form attached to a functional"},
      {"heis radical", "Radical of the alternating form"},
      {"heis polarization", "Maximal isotropic subalgebra check"},
      {"heis density", "Pfaffian density of a nondegenerate functional"},
      {"rep matrix", "Operator of a group element on the grid"},
      {"rep commutant", "Dimension of the joint commutant"},
      {"rep trace", "Trace of the operator of a group element"},
      {"sl2 basis", "Distinguished reference triples"},
      {"sl2 cayley", "Rotate a triple into its normal position"},
      {"sl2 complete", "Complete a nilpotent element to a triple"},
      {"sl2 sekiguchi", "Nilpotent partner and its neutral element"},
      {"sl2 class", "Position and equivariance flags of a triple"},
      {"jacobi mul", "Group product"},
      {"jacobi inv", "Group inverse"},
      {"jacobi embed", "Faithful symplectic realization"},
      {"jacobi act", "Action on a domain point pair"},
      {"jacobi qform", "Antisymmetric central form of two pairs"},
      {"jacobi iwasawa", "Factorization with transported translation data"},
      {"jacobi differential", "Derivative of the action at the base point"},
      {"jacobi table", "Structure constants; --verify checks them"},
      {"jacobi killing", "Trace-form proportionality check"},
      {"jacobi cstruct", "Complex structure on a tangent datum"},
      {"jacobi pairing", "Functional applied to an algebra element"},
      {"jacobi coadjoint", "Coadjoint action on a functional"},
      {"jacobi orbit", "Membership in a named orbit family"},
      {"jacobi minorbit", "Residual of the minimal-orbit description"},
      {"orbit check", "Alias of 'jacobi orbit'"},
      {"theta eval", "Evaluate a lattice theta series"},
      {"theta invariance", "Transformation-law residual for a generator"},
      {"theta fourier", "Fourier coefficient of a theta series"},
  };
  return blurbs;
}

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Reads the document named by --input ('-' selects standard input).
std::string read_input(const std::string& path) {
  if (path == "-") return read_stream(std::cin);
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open input file '" + path + "'");
  return read_stream(file);
}

int emit_error(const std::string& kind, const std::string& detail, int code) {
  ojson err;
  err["error"]["kind"] = kind;
  err["error"]["detail"] = detail;
  std::cout << err.dump() << "\n";
  return code;
}

int run_leaf(const Leaf& leaf) {
  ojson request = ojson::object();
  try {
    if (!leaf.input.empty()) {
      request = ojson::parse(read_input(leaf.input));
      if (!request.is_object())
        return emit_error("parse", "request must be a JSON object",
                          OKT_PARSE_ERROR);
    }
    if (leaf.tol_opt != nullptr && leaf.tol_opt->count() > 0)
      request["tol"] = leaf.tol;
    if (leaf.exact) request["exact"] = true;
    if (leaf.n_opt != nullptr && leaf.n_opt->count() > 0) request["n"] = leaf.n;
    if (leaf.m_opt != nullptr && leaf.m_opt->count() > 0) request["m"] = leaf.m;
    if (leaf.verify) request["verify"] = true;
    if (!leaf.nilpotent.empty())
      request["E"] = ojson::parse(read_input(leaf.nilpotent));
    if (!leaf.ambient.empty()) request["ambient"] = leaf.ambient;
  } catch (const std::exception& e) {
    return emit_error("parse", e.what(), OKT_PARSE_ERROR);
  }

  okt_ctx* ctx = okt_ctx_new();
  char* response = nullptr;
  int code = okt_run(ctx, leaf.op.c_str(), request.dump().c_str(), &response);
  if (response != nullptr) {
    std::cout << response << "\n";
    okt_buffer_free(response);
  }
  okt_ctx_free(ctx);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch JSON front end for the orbitkit shared library"};
  app.set_version_flag("--version", okt_version());
  app.require_subcommand(1);

  std::map<std::string, CLI::App*> groups;
  std::vector<std::unique_ptr<Leaf>> leaves;

  for (int i = 0; i < okt_op_count(); ++i) {
    std::string op = okt_op_name(i);
    auto space = op.find(' ');
    std::string group = op.substr(0, space);
    std::string name = op.substr(space + 1);

    CLI::App* group_cmd;
    auto found = groups.find(group);
    if (found != groups.end()) {
      group_cmd = found->second;
    } else {
      auto blurb = group_blurbs().find(group);
      group_cmd = app.add_subcommand(
          group, blurb != group_blurbs().end() ? blurb->second : "");
      group_cmd->require_subcommand(1);
      groups[group] = group_cmd;
    }

    auto leaf = std::make_unique<Leaf>();
    leaf->op = op;
    auto blurb = leaf_blurbs().find(op);
    leaf->cmd = group_cmd->add_subcommand(
        name, blurb != leaf_blurbs().end() ? blurb->second : "");
    leaf->cmd->add_option("--input", leaf->input,
                          "JSON request: a file path, or '-' for stdin");
    leaf->tol_opt =
        leaf->cmd->add_option("--tol", leaf->tol, "Override the tolerance");
    leaf->cmd->add_flag("--exact", leaf->exact,
                        "Use exact rational arithmetic where supported");
    if (op == "jacobi table") {
      leaf->n_opt = leaf->cmd->add_option("--n", leaf->n, "Rank parameter");
      leaf->m_opt = leaf->cmd->add_option("--m", leaf->m, "Index parameter");
      leaf->cmd->add_flag("--verify", leaf->verify,
                          "Check every identity and report pass/fail");
    }
    if (op == "sl2 complete") {
      leaf->cmd->add_option("--nilpotent", leaf->nilpotent,
                            "File holding the nilpotent matrix as JSON");
      leaf->cmd->add_option("--ambient", leaf->ambient,
                            "Ambient algebra: 'sl' (default) or 'sp'");
    }
    leaves.push_back(std::move(leaf));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return OKT_UNKNOWN_OP;
  } catch (const CLI::RequiredError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return OKT_UNKNOWN_OP;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return OKT_PARSE_ERROR;
  }

  for (const auto& leaf : leaves)
    if (leaf->cmd->parsed()) return run_leaf(*leaf);

  // require_subcommand guarantees one leaf parsed; defensive fallback.
  std::cerr << app.help();
  return OKT_UNKNOWN_OP;
}
