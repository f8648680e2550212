#include "lenstor/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>

#include <CLI11.hpp>

namespace lenstor::cli {

namespace {

std::int64_t inverse_mod(std::int64_t q, std::int64_t p) {
  for (std::int64_t k = 1; k < p; ++k)
    if ((k * q) % p == 1) return k;
  throw BadParameters("q is not invertible mod p");
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot write " + path);
  os << j.dump(2) << '\n';
}

Json report(const std::string& command, Json inputs, Json outputs, Json summary) {
  return Json{{"command", command}, {"inputs", std::move(inputs)}, {"outputs", std::move(outputs)},
              {"summary", std::move(summary)}};
}

std::set<std::string> orbit_values(const InvariantReport& r) {
  std::set<std::string> values;
  for (const auto& entry : r.structure.orbit) values.insert(entry.c.to_string());
  return values;
}

std::string power(const GroupElement& g) {
  if (g.group().rank() == 1) return "x^" + std::to_string(g.residue(0));
  return g.to_string();
}

struct Options {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t e = 0;
  std::string input;
  std::string out;
  bool json = false;
  bool paranoid = false;
  std::int64_t pmax = 9;
  std::vector<std::int64_t> compare;
};

int cmd_lens(const Options& o, std::ostream& out) {
  const TorsionFunction t = lens_torsion(o.p, o.q, o.e);
  const Rational total = augment(t.values());
  if (!o.out.empty()) write_file(o.out, to_json(t));
  if (o.json) {
    out << report("lens", Json{{"p", o.p}, {"q", o.q}, {"e", o.e}}, Json{{"torsion", to_json(t)}},
                  Json{{"augmentation", total.to_string()}, {"passed", total.is_zero()}})
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "torsion of L(" << o.p << "," << o.q << "), e = " << o.e << "\n";
  for (std::size_t i = 0; i < t.values().size(); ++i) {
    out << "  x^" << std::left << std::setw(4) << i << t.values()[i] << "\n";
  }
  out << "augmentation: " << total << "\n";
  return kOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  std::optional<TorsionFunction> t;
  Json inputs;
  if (!o.input.empty()) {
    t.emplace(torsion_from_json(read_json_file(o.input)));
    inputs = Json{{"input", o.input}};
  } else {
    t.emplace(lens_torsion(o.p, o.q, o.e));
    inputs = Json{{"p", o.p}, {"q", o.q}, {"e", o.e}};
  }
  inputs["paranoid"] = o.paranoid;
  const ModZTorsion xi = reduce_mod_z(*t);
  const InvariantReport r =
      canonical_invariant(xi, o.paranoid ? Verification::cross_check : Verification::structured);
  const StructureResult& s = r.structure;

  if (!o.out.empty()) write_file(o.out, to_json(s));
  if (o.json) {
    out << report("decompose", std::move(inputs), Json{{"structure", to_json(s)}, {"linking", to_json(r.linking)}},
                  Json{{"c", s.c.to_string()}, {"c_stable", s.c_stable}, {"symmetric", r.symmetric}})
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "c        = " << s.c << "\n";
  out << "shift    = " << power(s.shift) << "\n";
  out << "c_stable = " << (s.c_stable ? "true" : "false") << "\n";
  out << "symmetric in normal position: " << (r.symmetric ? "yes" : "no") << "\n";
  out << "refinement orbit:\n";
  for (const auto& e : s.orbit) out << "  shift " << power(e.shift) << "  c " << e.c << "\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.pmax < 2 || o.pmax > kMaxGridP) {
    throw BadParameters("--pmax must lie in [2, " + std::to_string(kMaxGridP) + "]");
  }
  Json cells = Json::array();
  std::size_t failures = 0;
  std::size_t unstable = 0;
  std::vector<GridCell> grid;
  for (std::int64_t p = 2; p <= o.pmax; ++p)
    for (std::int64_t q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) grid.push_back(verify_cell(p, q));
  for (const auto& cell : grid) {
    if (!cell.passed()) ++failures;
    if (!cell.c_stable) ++unstable;
    cells.push_back(cell.to_json());
  }
  const Json summary{{"cells", grid.size()}, {"failures", failures}, {"unstable", unstable},
                     {"passed", failures == 0}};
  const Json rep = report("verify", Json{{"pmax", o.pmax}}, Json{{"cells", cells}}, summary);
  if (!o.out.empty()) write_file(o.out, rep);
  if (o.json) {
    out << rep.dump(2) << '\n';
  } else {
    out << std::left << std::setw(5) << "p" << std::setw(5) << "q" << std::setw(12) << "c" << std::setw(8)
        << "stable" << "result\n";
    for (const auto& cell : grid) {
      out << std::setw(5) << cell.p << std::setw(5) << cell.q << std::setw(12) << cell.c << std::setw(8)
          << (cell.c_stable ? "yes" : "no") << (cell.passed() ? "pass" : "FAIL " + cell.error) << "\n";
    }
    out << grid.size() << " cells, " << failures << " failed, " << unstable << " with c unstable across refinements\n";
  }
  return failures == 0 ? kOk : kVerificationFailure;
}

int cmd_compare(const Options& o, std::ostream& out) {
  if (o.compare.size() != 4) throw BadParameters("compare takes p1 q1 p2 q2");
  const auto a = reduce_mod_z(lens_torsion(o.compare[0], o.compare[1]));
  const auto b = reduce_mod_z(lens_torsion(o.compare[2], o.compare[3]));
  const Verdict v = distinguish(a, b, o.paranoid ? Verification::cross_check : Verification::structured);
  const std::string verdict = v.distinguished ? "distinguished by c" : "c agrees";
  const Json rep = report("compare",
                          Json{{"first", {o.compare[0], o.compare[1]}}, {"second", {o.compare[2], o.compare[3]}}},
                          Json{{"c_first", v.c_first.to_string()}, {"c_second", v.c_second.to_string()}},
                          Json{{"verdict", verdict}, {"distinguished", v.distinguished}});
  if (!o.out.empty()) write_file(o.out, rep);
  if (o.json) {
    out << rep.dump(2) << '\n';
    return kOk;
  }
  out << "L(" << o.compare[0] << "," << o.compare[1] << "): c = " << v.c_first << "\n";
  out << "L(" << o.compare[2] << "," << o.compare[3] << "): c = " << v.c_second << "\n";
  out << verdict << "\n";
  return kOk;
}

}  // namespace

bool GridCell::passed() const {
  return error.empty() && augmentation_zero && spinc_equivariant && turaev_violations == 0 &&
         turaev_translation_invariant && decomposition_ok && symmetric && lattice_ok && translation_invariant_c &&
         replacement_invariant_c;
}

Json GridCell::to_json() const {
  return Json{{"p", p},
              {"q", q},
              {"c", c},
              {"c_stable", c_stable},
              {"augmentation_zero", augmentation_zero},
              {"spinc_equivariant", spinc_equivariant},
              {"turaev_violations", turaev_violations},
              {"turaev_translation_invariant", turaev_translation_invariant},
              {"decomposition_ok", decomposition_ok},
              {"symmetric", symmetric},
              {"lattice_ok", lattice_ok},
              {"translation_invariant_c", translation_invariant_c},
              {"replacement_invariant_c", replacement_invariant_c},
              {"replacement_same_c", replacement_same_c},
              {"error", error},
              {"passed", passed()}};
}

GridCell verify_cell(std::int64_t p, std::int64_t q) {
  GridCell cell;
  cell.p = p;
  cell.q = q;
  try {
    const TorsionFunction t = lens_torsion(p, q, 0);
    const FinAbGroup& group = t.group();
    const GroupElement x = group.generator(0);
    cell.augmentation_zero = augment(t.values()).is_zero();
    cell.spinc_equivariant = lens_torsion(p, q, 1).values() == translate(x, t.values()) &&
                             lens_torsion(p, q, p - 1).values() == translate((p - 1) * x, t.values());

    const ModZTorsion xi = reduce_mod_z(t);
    const BilinearFormQZ lk = extract_linking(xi);
    const TuraevReport turaev = verify_turaev(t, lk);
    cell.turaev_violations = turaev.violations.size();
    cell.turaev_translation_invariant = turaev.translation_invariant;

    const InvariantReport inv = canonical_invariant(xi, Verification::cross_check);
    cell.decomposition_ok = true;
    cell.symmetric = inv.symmetric;
    cell.c_stable = inv.structure.c_stable;
    cell.c = inv.c().to_string();

    const DiscriminantForm disc = discriminant_form(lens_resolution(p, q));
    cell.lattice_ok = disc.quadratic.satisfies_quadratic_axioms() && delta_quadratic(disc.quadratic) == disc.bilinear &&
                      is_nonsingular(disc.bilinear) && find_isometry(disc.bilinear, -lk).has_value();

    cell.translation_invariant_c = true;
    for (std::size_t i = 1; i < xi.values.size() && cell.translation_invariant_c; ++i) {
      const ModZTorsion moved{translate(group.at(i), xi.values)};
      cell.translation_invariant_c = canonical_invariant(moved, Verification::structured).c() == inv.c();
    }
    const InvariantReport swapped =
        canonical_invariant(reduce_mod_z(lens_torsion(p, inverse_mod(q, p), 0)), Verification::structured);
    cell.replacement_same_c = swapped.c() == inv.c();
    cell.replacement_invariant_c = cell.c_stable ? cell.replacement_same_c : orbit_values(swapped) == orbit_values(inv);
  } catch (const Error& e) {
    cell.error = e.what();
  }
  return cell;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reidemeister-Turaev torsion of lens spaces and its mod-Z normal form", "lenstor"};
  app.require_subcommand(1);
  Options o;

  auto* lens = app.add_subcommand("lens", "torsion function of L(p, q)");
  lens->add_option("-p", o.p, "order of H_1")->required();
  lens->add_option("-q", o.q, "lens parameter, coprime to p")->required();
  lens->add_option("-e", o.e, "spin^c translation index");
  lens->add_option("--out", o.out, "write the torsion function as JSON");
  lens->add_flag("--json", o.json, "JSON report on stdout");

  auto* decompose = app.add_subcommand("decompose", "constant c and canonical shift of the mod-Z torsion");
  auto* dp = decompose->add_option("-p", o.p, "order of H_1");
  auto* dq = decompose->add_option("-q", o.q, "lens parameter");
  decompose->add_option("-e", o.e, "spin^c translation index");
  auto* din = decompose->add_option("--input", o.input, "torsion function JSON file");
  din->excludes(dp)->excludes(dq);
  decompose->add_flag("--paranoid", o.paranoid, "also run the exhaustive shift search and compare");
  decompose->add_option("--out", o.out, "write the structure result as JSON");
  decompose->add_flag("--json", o.json, "JSON report on stdout");

  auto* verify = app.add_subcommand("verify", "check identity and invariants for all L(p, q), p <= pmax");
  verify->add_option("--pmax", o.pmax, "largest p in the grid");
  verify->add_option("--out", o.out, "write the grid report as JSON");
  verify->add_flag("--json", o.json, "JSON report on stdout");

  auto* compare = app.add_subcommand("compare", "compare c of two lens spaces");
  compare->add_option("spaces", o.compare, "p1 q1 p2 q2")->expected(4)->required();
  compare->add_flag("--paranoid", o.paranoid, "cross-check both decompositions");
  compare->add_option("--out", o.out, "write the verdict as JSON");
  compare->add_flag("--json", o.json, "JSON report on stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (decompose->parsed() && o.input.empty() && (dp->count() == 0 || dq->count() == 0)) {
      throw CLI::ValidationError("decompose needs -p and -q, or --input");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadParameters;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (lens->parsed()) code = cmd_lens(o, out);
    if (decompose->parsed()) code = cmd_decompose(o, out);
    if (verify->parsed()) code = cmd_verify(o, out);
    if (compare->parsed()) code = cmd_compare(o, out);
  } catch (const BadParameters& e) {
    err << "error: " << e.what() << "\n";
    return kBadParameters;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NotTorsionLike& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GroupMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    // RefinementMismatch, NoSolution, MultipleSolutions, NotAffine, InternalError
    err << "error: " << e.what() << "\n";
    return kDecompositionFailure;
  }
  if (!o.json) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out << "elapsed: " << ms.count() << " ms\n";
  }
  return code;
}

}  // namespace lenstor::cli
