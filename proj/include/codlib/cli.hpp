#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "codlib/codlib.hpp"

namespace codlib::cli {

/// Flag/argument combinations that CLI11 cannot reject on its own; mapped to
/// exit code 2 like any other usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  require(file.good(), Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << file.rdbuf();
  require(!file.bad(), Errc::io_error, "failed reading '" + path + "'");
  return buf.str();
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  require(file.good(), Errc::io_error, "cannot open '" + path + "' for writing");
  file << content;
  require(file.good(), Errc::io_error, "failed writing '" + path + "'");
}

inline Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), Errc::parse_error, "input is not valid JSON");
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::vector<int> parse_signs(const std::string& spec) {
  std::vector<int> signs;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok == "+" || tok == "+1") {
      signs.push_back(1);
    } else if (tok == "-" || tok == "-1") {
      signs.push_back(-1);
    } else {
      throw UsageError("--signs expects a comma-separated list of + and -");
    }
  }
  if (signs.empty()) throw UsageError("--signs expects a comma-separated list of + and -");
  return signs;
}

inline std::pair<int, int> parse_blocks(const std::string& spec) {
  int n1 = -1, n2 = -1;
  char comma = 0;
  std::istringstream in(spec);
  if (!(in >> n1 >> comma >> n2) || comma != ',' || !(in >> std::ws).eof() || n1 < 0 || n2 < 0)
    throw UsageError("--blocks expects 'n1,n2' with nonnegative integers");
  return {n1, n2};
}

}  // namespace detail

/// Executes one subcommand. Returns 0 on success, 1 for domain errors
/// (reported as {"error", "detail"} JSON on the error stream), 2 for usage
/// errors. All results go to `out`; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"square complex/Hermitian orthogonal design toolkit", "codtool"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "emit a canonical design as JSON");
  std::string gen_kind;
  int gen_k = 0, gen_m = 0;
  bool gen_minus = false;
  std::string gen_blocks, gen_pairing = "interleaved", gen_out = "-";
  gen->add_option("--kind", gen_kind, "design kind")
      ->required()
      ->check(CLI::IsMember({"cod", "hod"}));
  gen->add_option("--k", gen_k, "complex variable count (cod)");
  gen->add_option("--m", gen_m, "real variable count (hod)");
  gen->add_flag("--minus", gen_minus, "emit the minus canonical form");
  gen->add_option("--blocks", gen_blocks, "block-diagonal canonical form 'n1,n2'");
  gen->add_option("--pairing", gen_pairing, "hod variable pairing convention")
      ->check(CLI::IsMember({"interleaved", "block"}));
  gen->add_option("-o,--output", gen_out, "output file ('-' = stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "check the design identities");
  std::string verify_file = "-";
  double verify_tol = 1e-9;
  verify->add_option("file", verify_file, "design JSON ('-' = stdin)");
  verify->add_option("--tol", verify_tol, "residual tolerance");

  // info
  auto* info = app.add_subcommand("info", "admissibility and counting facts");
  Index info_n = 0;
  int info_k = 0;
  info->add_option("--n", info_n, "design dimension")->required();
  info->add_option("--k", info_k, "complex variable count")->required();

  // scramble
  auto* scramble = app.add_subcommand("scramble", "conjugate by Haar random unitaries");
  std::string scramble_file = "-", scramble_out = "-";
  std::uint64_t scramble_seed = 0;
  scramble->add_option("file", scramble_file, "design JSON ('-' = stdin)");
  scramble->add_option("--seed", scramble_seed, "random seed");
  scramble->add_option("-o,--output", scramble_out, "output file ('-' = stdout)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "compute the canonical decomposition");
  std::string dec_file = "-", dec_out = "-";
  std::uint64_t dec_seed = 0;
  double dec_tol = 1e-9;
  int dec_threads = 1;
  dec->add_option("file", dec_file, "design JSON ('-' = stdin)");
  dec->add_option("--seed", dec_seed, "random seed");
  dec->add_option("--tol", dec_tol, "residual tolerance");
  dec->add_option("--threads", dec_threads, "parallelism for the group average")
      ->check(CLI::Range(1, 64));
  dec->add_option("-o,--output", dec_out, "output file ('-' = stdout)");

  // canonicalize
  auto* canon = app.add_subcommand("canonicalize", "canonicalize a combinatorial design");
  std::string canon_file = "-", canon_out = "-";
  canon->add_option("file", canon_file, "grid text file ('-' = stdin)");
  canon->add_option("-o,--output", canon_out, "output file ('-' = stdout)");

  // extend
  auto* extend = app.add_subcommand("extend", "extend an odd-variable hod by one variable");
  std::string extend_file = "-", extend_signs, extend_out = "-";
  std::uint64_t extend_seed = 0;
  double extend_tol = 1e-9;
  extend->add_option("file", extend_file, "design JSON ('-' = stdin)");
  extend->add_option("--signs", extend_signs, "per-block signs, e.g. '+,-' (default all +)");
  extend->add_option("--seed", extend_seed, "random seed");
  extend->add_option("--tol", extend_tol, "residual tolerance");
  extend->add_option("-o,--output", extend_out, "output file ('-' = stdout)");

  // group
  auto* group = app.add_subcommand("group", "inspect the sign group on m generators");
  int group_m = 0;
  bool group_classes = false, group_characters = false;
  group->add_option("--m", group_m, "generator count")->required()->check(CLI::Range(1, 14));
  group->add_flag("--classes", group_classes, "emit the conjugacy classes");
  group->add_flag("--characters", group_characters, "emit the character table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(gen)) {
      const bool is_cod = gen_kind == "cod";
      const int vars = is_cod ? gen_k : gen_m;
      if (is_cod && (gen_k < 1 || gen->count("--m") > 0))
        throw UsageError("gen --kind cod takes --k (and not --m)");
      if (!is_cod && (gen_m < 1 || gen->count("--k") > 0))
        throw UsageError("gen --kind hod takes --m (and not --k)");
      if (gen_minus && gen->count("--blocks") > 0)
        throw UsageError("--minus and --blocks are mutually exclusive");
      CanonicalSpec spec{is_cod ? DesignKind::cod : DesignKind::hod, vars, 1, 0};
      if (gen_minus) spec = {spec.kind, vars, 0, 1};
      if (gen->count("--blocks") > 0) {
        const auto [n1, n2] = detail::parse_blocks(gen_blocks);
        spec.plus_blocks = n1;
        spec.minus_blocks = n2;
      }
      LinearDesign d = canonical_block(spec);
      if (!is_cod && gen_pairing == "block") {
        require(vars % 2 == 0, Errc::invalid_argument,
                "--pairing block needs an even variable count");
        d = hod_to_block(d);
      }
      detail::write_output(gen_out, detail::dump(design_to_json(d)), out);
      return 0;
    }

    if (app.got_subcommand(verify)) {
      const LinearDesign d = design_from_json(detail::parse_json(detail::read_input(verify_file, in)));
      const VerifyReport report = verify_design(d, Tolerance{verify_tol, verify_tol});
      Json j = Json::object();
      j["ok"] = report.ok;
      j["max_residual"] = report.max_residual;
      out << detail::dump(j);
      if (!report.ok) {
        Json diag = Json::object();
        diag["error"] = errc_name(Errc::verification_failed);
        diag["detail"] = "max residual " + std::to_string(report.max_residual);
        err << detail::dump(diag);
        return 1;
      }
      return 0;
    }

    if (app.got_subcommand(info)) {
      const bool admissible = cod_admissible(info_n, info_k);
      Json j = Json::object();
      j["n"] = info_n;
      j["k"] = info_k;
      j["admissible"] = admissible;
      j["hurwitz_radon"] = hurwitz_radon(static_cast<std::uint64_t>(info_n));
      j["equivalence_classes"] =
          admissible ? Json(equivalence_class_count(info_n, info_k)) : Json(nullptr);
      out << detail::dump(j);
      return 0;
    }

    if (app.got_subcommand(scramble)) {
      const LinearDesign d =
          design_from_json(detail::parse_json(detail::read_input(scramble_file, in)));
      const ComplexMatrix u = haar_unitary(d.p(), scramble_seed, 0);
      const ComplexMatrix v = haar_unitary(d.n(), scramble_seed, 1);
      detail::write_output(scramble_out, detail::dump(design_to_json(transform(d, u, v))), out);
      return 0;
    }

    if (app.got_subcommand(dec)) {
      const LinearDesign d = design_from_json(detail::parse_json(detail::read_input(dec_file, in)));
      DecomposeOptions opts;
      opts.seed = dec_seed;
      opts.tol = Tolerance{dec_tol, dec_tol};
      opts.threads = dec_threads;
      const Decomposition result = decompose(d, opts);
      detail::write_output(dec_out, detail::dump(decomposition_to_json(result)), out);
      return 0;
    }

    if (app.got_subcommand(canon)) {
      const CombinatorialDesign d = parse_grid_text(detail::read_input(canon_file, in));
      const CanonicalizeResult result = canonicalize(d);
      Json j = Json::object();
      j["spec"] = spec_to_json(result.spec);
      j["witness"] = witness_to_json(result.witness);
      detail::write_output(canon_out, detail::dump(j), out);
      return 0;
    }

    if (app.got_subcommand(extend)) {
      const LinearDesign d =
          design_from_json(detail::parse_json(detail::read_input(extend_file, in)));
      std::vector<int> signs;
      if (extend->count("--signs") > 0) {
        signs = detail::parse_signs(extend_signs);
      } else if (d.kind() == DesignKind::hod && d.vars() % 2 == 1 &&
                 hod_admissible(d.n(), d.vars())) {
        const Index bd = pow2((d.vars() + 1) / 2 - 1);
        signs.assign(static_cast<std::size_t>(d.n() / bd), 1);
      }
      const LinearDesign extended = extend_hod(d, signs, extend_seed,
                                               Tolerance{extend_tol, extend_tol});
      detail::write_output(extend_out, detail::dump(design_to_json(extended)), out);
      return 0;
    }

    if (app.got_subcommand(group)) {
      if (group_classes && group_characters)
        throw UsageError("--classes and --characters are mutually exclusive");
      Json j = Json::object();
      j["m"] = group_m;
      j["order"] = Index{1} << (group_m + 1);
      if (group_classes || group_characters) {
        Json classes = Json::array();
        const auto cls = conjugacy_classes(group_m);
        for (const auto& c : cls) {
          Json one = Json::array();
          for (const GroupElement& e : c) one.push_back(element_to_json(e));
          classes.push_back(std::move(one));
        }
        j["classes"] = std::move(classes);
        if (group_characters) {
          // Character values on class representatives (first element of
          // each class in enumeration order).
          Json chars = Json::array();
          auto add_character = [&](const std::string& name, auto&& value_of) {
            Json entry = Json::object();
            entry["name"] = name;
            Json values = Json::array();
            for (const auto& c : cls) {
              const Complex v = value_of(c.front());
              values.push_back(Json::array({v.real(), v.imag()}));
            }
            entry["values"] = std::move(values);
            chars.push_back(std::move(entry));
          };
          int spin_count = 0;
          for (const IrrepSpec& spec : irrep_inventory(group_m)) {
            if (spec.realization) {
              std::string name = "spin";
              if (group_m % 2 == 1) name += spin_count == 0 ? "+" : "-";
              ++spin_count;
              add_character(name, [&](const GroupElement& e) {
                return rep_image(*spec.realization, e).trace();
              });
            } else {
              std::string name = "sign[";
              bool first = true;
              for (int i = 1; i <= group_m; ++i)
                if (*spec.sign_subset & (std::uint32_t{1} << (i - 1))) {
                  if (!first) name += ",";
                  name += std::to_string(i);
                  first = false;
                }
              name += "]";
              const OneDimCharacter chi{group_m, *spec.sign_subset};
              add_character(name, [chi](const GroupElement& e) { return Complex(chi(e), 0.0); });
            }
          }
          j["characters"] = std::move(chars);
        }
      } else {
        j["conjugacy_classes"] = static_cast<Index>(conjugacy_classes(group_m).size());
        Json dims = Json::array();
        for (const IrrepSpec& spec : irrep_inventory(group_m)) dims.push_back(spec.dim);
        j["irrep_dimensions"] = std::move(dims);
      }
      out << detail::dump(j);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    Json diag = Json::object();
    diag["error"] = errc_name(e.code());
    diag["detail"] = e.what();
    err << detail::dump(diag);
    return 1;
  } catch (const std::exception& e) {
    Json diag = Json::object();
    diag["error"] = "InternalError";
    diag["detail"] = e.what();
    err << detail::dump(diag);
    return 1;
  }
  return 0;
}

}  // namespace codlib::cli
