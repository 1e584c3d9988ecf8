#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "panmagic/core.hpp"
#include "panmagic/decomp.hpp"
#include "panmagic/gallery.hpp"
#include "panmagic/io.hpp"
#include "panmagic/perms.hpp"
#include "panmagic/products.hpp"

namespace panmagic::cli {

/// Exit codes: affirmative result, negative mathematical verdict, bad
/// usage or input.
enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

namespace detail {

using nlohmann::json;

struct Context {
  std::istream& in;
  std::ostream& out;
};

inline SquareMatrix load_matrix(Context& ctx, const std::string& path) {
  return parse_matrix(read_source(path, ctx.in), path == "-" ? "<stdin>" : path);
}

inline void emit_matrix(Context& ctx, const SquareMatrix& m, const std::string& format) {
  if (format == "json")
    ctx.out << matrix_to_json(m).dump(2) << "\n";
  else
    ctx.out << format_matrix(m);
}

inline void emit_permutation(Context& ctx, const Permutation& p, const std::string& format, bool as_matrix) {
  if (as_matrix)
    return emit_matrix(ctx, perm_matrix(p), format);
  if (format == "json")
    ctx.out << json{{"n", p.degree()}, {"images", std::vector<int>(p.images().begin(), p.images().end())}}.dump(2) << "\n";
  else
    ctx.out << format_permutation(p);
}

inline std::string images_line(const Permutation& p) {
  std::string s;
  for (int j = 0; j < p.degree(); ++j)
    s += (j ? " " : "") + std::to_string(p(j));
  return s;
}

inline json certificate_json(const std::optional<NonDecompCertificate>& c) {
  if (!c)
    return json{{"certified", false}};
  return json{{"certified", true}, {"entry", {c->row, c->column}}, {"nodes_visited", c->nodes_visited}};
}

inline int do_check(Context& ctx, const std::string& input, const std::string& format) {
  const SquareMatrix a = load_matrix(ctx, input);
  const MagicReport r = check_panmagic(a);
  const auto ps = check_panstochastic(a);
  if (format == "json") {
    json j{{"panmagic", r.panmagic()}, {"panstochastic", ps.ok}};
    if (r.panmagic())
      j["mu"] = to_string(r.mu());
    else
      j["violation"] = json{{"kind", to_string(r.violation().kind)},
                            {"index", r.violation().index},
                            {"sum", to_string(r.violation().sum)},
                            {"expected", to_string(r.violation().expected)}};
    if (!ps.ok)
      j["reason"] = ps.reason;
    ctx.out << j.dump(2) << "\n";
  } else if (r.panmagic()) {
    ctx.out << (ps.ok ? "panstochastic" : "panmagic") << ", mu = " << to_string(r.mu()) << "\n";
  } else {
    const Violation& v = r.violation();
    ctx.out << "not panmagic: " << to_string(v.kind) << " " << v.index << " sums to " << to_string(v.sum) << ", expected "
            << to_string(v.expected) << "\n";
  }
  return r.panmagic() ? kOk : kNegative;
}

inline int do_enumerate(Context& ctx, int n, bool affine_only, bool count_only, bool allow_large, bool parallel,
                        const std::string& format) {
  if (affine_only) {
    const auto specs = enumerate_affine_panmagic(n);
    if (count_only) {
      ctx.out << (format == "json" ? json{{"n", n}, {"count", specs.size()}}.dump(2) : std::to_string(specs.size()))
              << "\n";
      return kOk;
    }
    if (format == "json") {
      json arr = json::array();
      for (const auto& s : specs) {
        const Permutation p = affine_perm(s, n);
        arr.push_back({{"a", s.a}, {"b", s.b}, {"images", std::vector<int>(p.images().begin(), p.images().end())}});
      }
      ctx.out << arr.dump(2) << "\n";
    } else {
      for (const auto& s : specs)
        ctx.out << images_line(affine_perm(s, n)) << "\n";
    }
    return kOk;
  }
  const EnumerateOptions opts{allow_large, parallel};
  if (count_only) {
    const auto count = count_panmagic(n, opts);
    ctx.out << (format == "json" ? json{{"n", n}, {"count", count}}.dump(2) : std::to_string(count)) << "\n";
    return kOk;
  }
  const auto perms = enumerate_panmagic(n, opts);
  if (format == "json") {
    json arr = json::array();
    for (const auto& p : perms)
      arr.push_back(std::vector<int>(p.images().begin(), p.images().end()));
    ctx.out << arr.dump(2) << "\n";
  } else {
    for (const auto& p : perms)
      ctx.out << images_line(p) << "\n";
  }
  return kOk;
}

inline int do_decompose(Context& ctx, const std::string& input, const std::string& format) {
  const SquareMatrix a = load_matrix(ctx, input);
  if (a.order() != 5)
    throw Error("decompose needs a 5 x 5 matrix, got order " + std::to_string(a.order()));
  if (auto v = check_panstochastic(a); !v) {
    ctx.out << "not panstochastic: " << v.reason << "\n";
    return kNegative;
  }
  const DecompositionResult d = decompose5(a);
  if (format == "text") {
    for (const auto& t : d.terms)
      ctx.out << to_string(t.coeff) << " : " << images_line(t.perm) << "\n";
    return kOk;
  }
  json arr = json::array();
  for (const auto& t : d.terms)
    arr.push_back(
        {{"coeff", to_string(t.coeff)}, {"perm", std::vector<int>(t.perm.images().begin(), t.perm.images().end())}});
  ctx.out << arr.dump(2) << "\n";
  return kOk;
}

inline int do_membership(Context& ctx, const std::string& input, const std::string& vertex_dir, int panmagic_n,
                         const std::string& format) {
  const SquareMatrix a = load_matrix(ctx, input);
  std::vector<SquareMatrix> vertices;
  std::vector<std::string> names;
  if (!vertex_dir.empty()) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(vertex_dir, ec))
      if (e.is_regular_file())
        files.push_back(e.path());
    if (ec)
      throw ParseError(vertex_dir, 0, "", "cannot read vertex directory");
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      vertices.push_back(load_matrix(ctx, f.string()));
      names.push_back(f.filename().string());
    }
  } else {
    for (const auto& p : enumerate_panmagic(panmagic_n)) {
      vertices.push_back(perm_matrix(p));
      names.push_back(images_line(p));
    }
  }
  if (vertices.empty()) {
    ctx.out << (format == "json" ? json{{"feasible", false}, {"reason", "empty vertex list"}}.dump(2)
                                 : std::string("infeasible (empty vertex list)"))
            << "\n";
    return kNegative;
  }
  const MembershipResult r = membership(a, vertices);
  if (format == "json") {
    json j{{"feasible", r.feasible}};
    if (r.feasible) {
      json terms = json::array();
      for (std::size_t k = 0; k < vertices.size(); ++k)
        if (r.coefficients[k] != 0)
          terms.push_back({{"vertex", names[k]}, {"coeff", to_string(r.coefficients[k])}});
      j["terms"] = terms;
    }
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << (r.feasible ? "feasible" : "infeasible") << "\n";
    if (r.feasible)
      for (std::size_t k = 0; k < vertices.size(); ++k)
        if (r.coefficients[k] != 0)
          ctx.out << to_string(r.coefficients[k]) << " : " << names[k] << "\n";
  }
  return r.feasible ? kOk : kNegative;
}

inline int do_certify(Context& ctx, const std::string& input, const std::string& format) {
  const SquareMatrix a = load_matrix(ctx, input);
  if (auto v = check_panstochastic(a); !v) {
    ctx.out << "not panstochastic: " << v.reason << "\n";
    return kNegative;
  }
  const auto cert = non_decomp_certificate(a);
  if (format == "text") {
    if (cert)
      ctx.out << "certificate: entry (" << cert->row << "," << cert->column << "), " << cert->nodes_visited
              << " search nodes\n";
    else
      ctx.out << "no certificate: every positive entry is covered\n";
  } else {
    ctx.out << certificate_json(cert).dump(2) << "\n";
  }
  return cert ? kNegative : kOk;
}

inline int do_counterexample(Context& ctx, int n, bool certify, const std::string& format) {
  const Counterexample ce = build_counterexample(n);
  emit_matrix(ctx, ce.matrix, format);
  if (!certify)
    return kOk;
  json j;
  if (ce.kind == CounterexampleKind::Uniform) {
    j = json{{"certified", true}, {"reason", "no panmagic permutation of degree " + std::to_string(n) + " exists"}};
  } else {
    j = certificate_json(non_decomp_certificate(ce.matrix));
  }
  ctx.out << j.dump(2) << "\n";
  return kOk;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    out.push_back(item);
  return out;
}

} // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`; `in` backs `--input -`.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact panmagic and panstochastic matrix toolkit", "panmagic"};
  app.require_subcommand(1);
  detail::Context ctx{in, out};

  std::string input, format = "text", vertex_dir, name, blocks, outer, left, right;
  int n = 0, panmagic_n = 0, p = 0;
  long a_coef = 0, b_coef = 0;
  bool affine_only = false, count_only = false, allow_large = false, parallel = false, certify = false,
       as_matrix = false;

  auto add_format = [&](CLI::App* sub, const std::string& dflt) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}))->default_str(dflt);
  };

  auto* check = app.add_subcommand("check", "Panmagic / panstochastic verdict");
  check->add_option("--input", input, "Matrix file, or - for stdin")->required();
  add_format(check, "text");

  auto* enumerate = app.add_subcommand("enumerate", "List panmagic permutations of degree n");
  enumerate->add_option("--n", n, "Degree")->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--affine-only", affine_only, "Only affine panmagic permutations");
  enumerate->add_flag("--count-only", count_only, "Print the count only");
  enumerate->add_flag("--allow-large", allow_large, "Lift the default degree cap");
  enumerate->add_flag("--parallel", parallel, "Search the first-column branches concurrently");
  add_format(enumerate, "text");

  auto* construct = app.add_subcommand("construct", "Build matrices and permutations");
  construct->require_subcommand(1);
  auto* wreath = construct->add_subcommand("wreath", "Wreath product of n blocks with an outer matrix");
  wreath->add_option("--blocks", blocks, "Comma-separated block matrix files")->required();
  wreath->add_option("--outer", outer, "Outer matrix file")->required();
  add_format(wreath, "text");
  auto* kron = construct->add_subcommand("kron", "Kronecker product");
  kron->add_option("--left", left, "Left matrix file")->required();
  kron->add_option("--right", right, "Right matrix file")->required();
  add_format(kron, "text");
  auto* affine = construct->add_subcommand("affine", "Affine permutation x -> ax + b (mod n)");
  affine->add_option("--a", a_coef)->required();
  affine->add_option("--b", b_coef)->required();
  affine->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  affine->add_flag("--matrix", as_matrix, "Emit the permutation matrix");
  add_format(affine, "text");
  auto* piecewise = construct->add_subcommand("piecewise", "Non-affine panmagic permutation (2x on p | x, else 3x)");
  piecewise->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  piecewise->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  piecewise->add_flag("--matrix", as_matrix, "Emit the permutation matrix");
  add_format(piecewise, "text");

  auto* decompose = app.add_subcommand("decompose", "Convex decomposition of a 5 x 5 panstochastic matrix");
  decompose->add_option("--input", input)->required();
  decompose->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* member = app.add_subcommand("membership", "Exact convex-hull membership");
  member->add_option("--input", input)->required();
  auto* vopt = member->add_option("--vertices", vertex_dir, "Directory of vertex matrices");
  auto* popt = member->add_option("--panmagic-n", panmagic_n, "Use all panmagic permutation matrices of degree N")
                   ->check(CLI::PositiveNumber);
  vopt->excludes(popt);
  add_format(member, "text");

  auto* cert = app.add_subcommand("certify", "Search for a non-decomposability certificate");
  cert->add_option("--input", input)->required();
  cert->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* fix = app.add_subcommand("fixture", "Print a named matrix");
  fix->add_option("--name", name)->required()->check(CLI::IsMember(fixture_names()));
  add_format(fix, "text");

  auto* counter = app.add_subcommand("counterexample", "Panstochastic matrix that does not decompose");
  counter->add_option("--n", n)->required();
  counter->add_flag("--certify", certify, "Append the certificate as JSON");
  add_format(counter, "text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*check)
      return detail::do_check(ctx, input, format);
    if (*enumerate)
      return detail::do_enumerate(ctx, n, affine_only, count_only, allow_large, parallel, format);
    if (*wreath) {
      std::vector<SquareMatrix> bs;
      for (const auto& f : detail::split_commas(blocks))
        bs.push_back(detail::load_matrix(ctx, f));
      detail::emit_matrix(ctx, wreath_matrices(bs, detail::load_matrix(ctx, outer)), format);
      return kOk;
    }
    if (*kron) {
      detail::emit_matrix(ctx, kronecker(detail::load_matrix(ctx, left), detail::load_matrix(ctx, right)), format);
      return kOk;
    }
    if (*affine) {
      detail::emit_permutation(ctx, affine_perm({a_coef, b_coef}, n), format, as_matrix);
      return kOk;
    }
    if (*piecewise) {
      detail::emit_permutation(ctx, nonaffine_piecewise(n, p), format, as_matrix);
      return kOk;
    }
    if (*decompose)
      return detail::do_decompose(ctx, input, decompose->count("--format") ? format : "json");
    if (*member) {
      if (vertex_dir.empty() && panmagic_n == 0)
        throw Error("membership needs --vertices or --panmagic-n");
      return detail::do_membership(ctx, input, vertex_dir, panmagic_n, format);
    }
    if (*cert)
      return detail::do_certify(ctx, input, cert->count("--format") ? format : "json");
    if (*fix) {
      detail::emit_matrix(ctx, fixture(name), format);
      return kOk;
    }
    if (*counter)
      return detail::do_counterexample(ctx, n, certify, format);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace panmagic::cli
