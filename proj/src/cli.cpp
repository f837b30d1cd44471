#include "titskit/cli.hpp"

#include "titskit/elements.hpp"
#include "titskit/errors.hpp"
#include "titskit/intrinsic.hpp"
#include "titskit/io.hpp"
#include "titskit/lattice.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace titskit::cli {

namespace {

using json = io::json;

struct Options {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string file;
  bool as_json = false;
  std::uint64_t samples = 1'000'000;
  bool exact_only = false;
  unsigned workers = 0;
  std::string s;
  std::string t;
  std::optional<std::size_t> hyperplane;
  std::string which;
};

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string with_width(double x, double hw) { return hw > 0 ? fixed(x) + " ± " + fixed(hw) : fixed(x); }

std::string padded(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string lhs;
  std::string rhs;
};

class Report {
 public:
  Report(std::string command, const Arrangement& arr) : command_(std::move(command)), arr_(arr) {}

  json results = json::object();
  json seeds = json::object();

  void check(std::string name, bool pass, std::string lhs, std::string rhs) {
    checks_.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
  }

  template <typename Fn>
  auto timed(const std::string& name, Fn fn) {
    const auto start = std::chrono::steady_clock::now();
    auto value = fn();
    timings_[name] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return value;
  }

  bool passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

  std::vector<Check> sorted_checks() const {
    std::vector<Check> out = checks_;
    std::stable_sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return out;
  }

  json to_json() const {
    json checks = json::array();
    for (const auto& c : sorted_checks()) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    }
    json arrangement = {{"dim", arr_.dim()},
                        {"hyperplanes", arr_.size()},
                        {"kind", std::string(to_string(arr_.kind()))},
                        {"fingerprint", arr_.fingerprint()}};
    return {{"command", command_}, {"arrangement", arrangement}, {"results", results}, {"checks", checks},
            {"timings", timings_}, {"seeds", seeds}, {"passed", passed()}};
  }

  void print_checks(std::ostream& out) const {
    for (const auto& c : sorted_checks()) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.lhs << " | " << c.rhs << '\n';
    }
  }

 private:
  std::string command_;
  const Arrangement& arr_;
  std::vector<Check> checks_;
  std::map<std::string, double> timings_;
};

Arrangement make_arrangement(const Options& o) {
  if (!o.file.empty()) {
    if (!o.family.empty()) throw InvalidConfig("--family and --file are mutually exclusive");
    return io::load_arrangement(o.file);
  }
  if (o.family.empty()) throw InvalidConfig("an arrangement is required: --family or --file");
  BuilderSpec spec;
  spec.n = o.n;
  spec.m = o.m;
  spec.seed = o.seed;
  if (o.family == "braid") {
    spec.family = Family::Braid;
  } else if (o.family == "signed-braid") {
    spec.family = Family::SignedBraid;
  } else if (o.family == "coordinate") {
    spec.family = Family::Coordinate;
  } else {
    spec.family = Family::Generic;
  }
  if (o.n == 0) throw InvalidConfig("--n must be positive");
  if (spec.family == Family::Generic && o.m == 0) throw InvalidConfig("--family generic needs --m");
  return build(spec);
}

IntrinsicConfig intrinsic_config(const Options& o) {
  IntrinsicConfig c;
  c.samples = o.samples;
  c.seed = o.seed;
  c.exact_only = o.exact_only;
  c.workers = o.workers;
  return c;
}

template <typename Scalar>
std::string join_characters(const std::vector<FlatCheck<Scalar>>& rows, bool expected) {
  std::string out;
  for (const auto& row : rows) {
    if (!out.empty()) out += "; ";
    out += io::coefficient_string(expected ? row.expected : row.character);
  }
  return out;
}

template <typename Scalar>
void characteristic_check(Report& report, const std::string& name, const CharacteristicReport<Scalar>& r) {
  report.check(name, r.characteristic, "chi_X(w) = [" + join_characters(r.flats, false) + "]",
               "t^rank(X) = [" + join_characters(r.flats, true) + "]");
}

/// Exact characteristic checks for every element defined on this arrangement.
void exact_characteristic_checks(Report& report, const TitsAlgebra& alg) {
  characteristic_check(report, "characteristic.unit", is_characteristic(alg, unit_element(alg), Rational(1)));
  characteristic_check(report, "characteristic.takeuchi", is_characteristic(alg, takeuchi_element(alg), Rational(-1)));
  const Polynomial t = Polynomial::variable();
  switch (alg.arrangement().kind()) {
    case ArrangementKind::Braid:
      characteristic_check(report, "characteristic.adams", is_characteristic(alg, normalized_adams_A(alg), t));
      break;
    case ArrangementKind::SignedBraid:
      characteristic_check(report, "characteristic.adams",
                           is_characteristic(alg, adams_B(alg), adams_B_parameter()));
      break;
    case ArrangementKind::Coordinate:
      characteristic_check(report, "characteristic.coordinate", is_characteristic(alg, coordinate_element(alg), t));
      break;
    default:
      break;
  }
}

void unit_identity_check(Report& report, const TitsAlgebra& alg) {
  const auto unit = unit_element(alg);
  std::size_t good = 0;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const auto h = TitsElement<Rational>::basis(FaceId{i});
    if (multiply(alg, unit, h) == h && multiply(alg, h, unit) == h) ++good;
  }
  report.check("unit.identity", good == alg.faces().size(), std::to_string(good) + " faces with uH_F = H_Fu = H_F",
               std::to_string(alg.faces().size()) + " faces");
}

void zaslavsky_checks(Report& report, const TitsAlgebra& alg) {
  const auto z = zaslavsky_counts(alg);
  report.results["zaslavsky"] = {{"chambers", z.chambers},
                                 {"essentially_bounded_chambers", z.essentially_bounded_chambers},
                                 {"chi_at_minus_1", to_string(z.chi_at_minus1)},
                                 {"chi_at_1", to_string(z.chi_at_1)}};
  report.check("zaslavsky.chambers", z.chambers_from_chi == Rational(z.chambers),
               "(-1)^rank chi(-1) = " + to_string(z.chambers_from_chi), "census " + std::to_string(z.chambers));
  report.check("zaslavsky.bounded_chambers", z.bounded_chambers_from_chi == Rational(z.essentially_bounded_chambers),
               "(-1)^rank chi(1) = " + to_string(z.bounded_chambers_from_chi),
               "census " + std::to_string(z.essentially_bounded_chambers));
}

std::vector<std::pair<Rational, Rational>> parameter_pairs(const Options& o, std::size_t count, Report& report) {
  if (!o.s.empty() || !o.t.empty()) {
    if (o.s.empty() || o.t.empty()) throw InvalidConfig("--s and --t must be given together");
    return {{parse_rational(o.s), parse_rational(o.t)}};
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Rational s(num(rng), den(rng));
    const Rational t(num(rng), den(rng));
    out.emplace_back(s, t);
  }
  report.seeds["parameters"] = o.seed;
  return out;
}

void kung_checks(Report& report, const TitsAlgebra& alg, const Options& o) {
  json rows = json::array();
  std::size_t index = 0;
  for (const auto& [s, t] : parameter_pairs(o, 5, report)) {
    const auto k = verify_kung(alg.lattice(), s, t);
    const std::string where = "(s, t) = (" + to_string(s) + ", " + to_string(t) + ")";
    report.check("kung." + padded(index) + ".single", k.lhs == k.single_sum,
                 "chi(st) = " + to_string(k.lhs) + " at " + where, "single sum = " + to_string(k.single_sum));
    report.check("kung." + padded(index) + ".pairs", k.lhs == k.pair_sum,
                 "chi(st) = " + to_string(k.lhs) + " at " + where, "pair sum = " + to_string(k.pair_sum));
    rows.push_back({{"s", to_string(s)}, {"t", to_string(t)}, {"chi_st", to_string(k.lhs)},
                    {"single_sum", to_string(k.single_sum)}, {"pair_sum", to_string(k.pair_sum)}});
    ++index;
  }
  report.results["kung"] = rows;
}

void deletion_checks(Report& report, const TitsAlgebra& alg, const Options& o) {
  std::vector<std::size_t> targets;
  if (o.hyperplane) {
    if (*o.hyperplane >= alg.arrangement().size()) throw IndexOutOfRange("--hyperplane out of range");
    targets.push_back(*o.hyperplane);
  } else {
    for (std::size_t i = 0; i < alg.arrangement().size(); ++i) targets.push_back(i);
  }
  json rows = json::array();
  for (std::size_t h : targets) {
    const auto d = verify_deletion_restriction(alg, h);
    json row = {{"hyperplane", h},
                {"rank", d.rank_full},
                {"rank_deleted", d.rank_deleted},
                {"precondition", d.precondition_holds},
                {"chi", to_string(d.chi_full)},
                {"chi_deleted", to_string(d.chi_deleted)},
                {"chi_restricted", to_string(d.chi_restricted)}};
    if (!d.precondition_holds) {
      row["status"] = "rank drops; identity not asserted";
      rows.push_back(row);
      continue;
    }
    const std::string name = "deletion." + padded(h);
    report.check(name + ".identity", d.identity_holds, "chi(A) = " + to_string(d.chi_full),
                 "chi(A\\H) - chi(A^H) = " + to_string(d.chi_deleted - d.chi_restricted));
    report.check(name + ".pushforward", d.pushforward_holds && d.pushforward_characteristic,
                 "chamber sum of pushed element = " + to_string(d.pushed_chamber_sum),
                 "chi(A\\H) = " + to_string(d.chi_deleted) +
                     (d.pushforward_characteristic ? "" : " (pushforward not characteristic)"));
    rows.push_back(row);
  }
  report.results["deletion"] = rows;
}

void adams_product_check(Report& report, const TitsAlgebra& alg) {
  if (alg.arrangement().kind() != ArrangementKind::Braid) return;
  const auto r = verify_adams_product(alg);
  std::size_t matches = 0;
  std::size_t normalized = 0;
  for (const auto& sample : r.samples) {
    matches += sample.product_matches ? 1 : 0;
    normalized += sample.normalized_characteristic ? 1 : 0;
  }
  const std::string total = std::to_string(r.samples.size()) + " sample pairs";
  report.check("product.adams", matches == r.samples.size(), "alpha_s alpha_t = alpha_st at " + std::to_string(matches),
               total);
  report.check("product.adams_normalized_characteristic", normalized == r.samples.size(),
               "(1/st) alpha_s alpha_t has parameter st at " + std::to_string(normalized), total);
}

json profile_to_json(const ConicVolumeProfile& p) {
  json out = {{"method", std::string(to_string(p.method))}, {"dim", p.dim}, {"lineality_dim", p.lineality_dim}};
  if (p.available()) {
    out["values"] = p.values;
    out["half_width"] = p.half_width;
  }
  if (p.method == VolumeMethod::MonteCarlo) {
    out["samples"] = p.samples;
    out["seed"] = p.seed;
  }
  return out;
}

json ks_to_json(const KlivansSwartzReport& ks) {
  json rows = json::array();
  for (std::size_t j = 0; j < ks.deviation.size(); ++j) {
    rows.push_back({{"power", j},
                    {"reconstructed", ks.reconstructed.coefficient(j)},
                    {"exact", to_string(ks.exact.coefficient(j))},
                    {"deviation", ks.deviation[j]},
                    {"half_width", ks.half_width[j]}});
  }
  return {{"reconstructed", to_string(ks.reconstructed)}, {"exact", to_string(ks.exact)}, {"table", rows},
          {"max_deviation", ks.max_deviation}};
}

void profile_checks(Report& report, const TitsAlgebra& alg, const IntrinsicElement& nu) {
  double worst_total = 0;
  double worst_alternating = 0;
  bool total_ok = true;
  bool alternating_ok = true;
  for (std::size_t i = 0; i < nu.profiles.size(); ++i) {
    const auto& p = nu.profiles[i];
    if (!p.available()) continue;
    const double tol = p.total_half_width() + 1e-9;
    const double total = std::abs(p.total() - 1.0);
    worst_total = std::max(worst_total, total);
    total_ok = total_ok && total <= tol;
    if (!p.is_subspace()) {
      const double alt = std::abs(p.alternating_sum());
      worst_alternating = std::max(worst_alternating, alt);
      alternating_ok = alternating_ok && alt <= tol;
    }
  }
  (void)alg;
  report.check("intrinsic.distribution", total_ok, "max |sum v_k - 1| = " + fixed(worst_total),
               "within each profile's half-width");
  report.check("intrinsic.gauss_bonnet", alternating_ok, "max |sum (-1)^k v_k| = " + fixed(worst_alternating),
               "within each profile's half-width");
}

void compare_with_exact(Report& report, const std::string& name, const TitsAlgebra& alg, const IntrinsicElement& nu,
                        const TitsElement<Rational>& exact, double t) {
  const auto values = nu.at(t);
  double worst = 0;
  bool ok = true;
  for (std::size_t i = 0; i < alg.faces().size(); ++i) {
    const FaceId f{i};
    const double dev = std::abs(values.coefficient(f) - exact.coefficient(f).convert_to<double>());
    worst = std::max(worst, dev);
    ok = ok && dev <= nu.tolerance(f, t) + 1e-9;
  }
  report.check(name, ok, "max |nu coefficient - exact coefficient| = " + fixed(worst), "within face half-widths");
}

void intrinsic_checks(Report& report, const TitsAlgebra& alg, const IntrinsicElement& nu, const Options& o) {
  profile_checks(report, alg, nu);
  if (!nu.available()) {
    report.results["intrinsic_checks"] = "skipped: some face profiles need Monte Carlo";
    return;
  }
  const auto ch = check_intrinsic_characteristic(alg, nu);
  std::string lhs;
  std::string rhs;
  for (const auto& row : ch.flats) {
    lhs += (lhs.empty() ? "" : "; ") + to_string(row.character);
    rhs += (rhs.empty() ? "" : "; ") + to_string(row.expected);
  }
  report.check("intrinsic.characteristic", ch.characteristic, "chi_X(nu_t) = [" + lhs + "]", "t^rank(X) = [" + rhs + "]");
  compare_with_exact(report, "intrinsic.unit", alg, nu, unit_element(alg), 1.0);
  compare_with_exact(report, "intrinsic.takeuchi", alg, nu, takeuchi_element(alg), -1.0);

  const auto ks = klivans_swartz_charpoly(alg, nu);
  bool ks_ok = true;
  for (std::size_t j = 0; j < ks.deviation.size(); ++j) ks_ok = ks_ok && ks.deviation[j] <= ks.half_width[j] + 1e-9;
  report.check("intrinsic.klivans_swartz", ks_ok, "reconstructed " + to_string(ks.reconstructed),
               "exact " + to_string(ks.exact));
  report.results["klivans_swartz"] = ks_to_json(ks);

  std::vector<std::pair<double, double>> pairs;
  if (!o.s.empty() && !o.t.empty()) {
    pairs.emplace_back(parse_rational(o.s).convert_to<double>(), parse_rational(o.t).convert_to<double>());
  } else {
    pairs = {{-1.0, -1.0}, {2.0, -1.5}};
  }
  std::size_t index = 0;
  for (const auto& [s, t] : pairs) {
    const auto r = verify_intrinsic_product(alg, nu, s, t);
    report.check("intrinsic.product." + padded(index++), r.passed,
                 "max |(nu_s nu_t - nu_st)^G| = " + fixed(r.max_deviation) + " at (s, t) = (" + fixed(s) + ", " +
                     fixed(t) + ")",
                 "tolerance margin " + fixed(-r.max_excess));
  }
}

IntrinsicElement compute_intrinsic(Report& report, const TitsAlgebra& alg, const Options& o) {
  const auto config = intrinsic_config(o);
  report.seeds["monte_carlo"] = config.seed;
  report.results["samples"] = config.samples;
  return report.timed("intrinsic", [&] { return intrinsic_element(alg, config); });
}

int finish(Report& report, std::ostream& out, bool as_json, const std::function<void()>& human) {
  if (as_json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    human();
    report.print_checks(out);
  }
  return report.passed() ? kPass : kCheckFailed;
}

int cmd_faces(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("faces", arr);
  const auto faces = report.timed("faces", [&] { return enumerate_faces(arr); });
  json rows = json::array();
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& f : faces.all()) {
    json witness = json::array();
    for (const auto& x : f.witness) witness.push_back(to_string(x));
    rows.push_back({{"sign_vector", f.signs.str()},
                    {"dim", f.dim},
                    {"essentially_bounded", f.essentially_bounded},
                    {"witness", witness}});
    ++by_dim[f.dim];
  }
  json counts = json::object();
  for (const auto& [d, c] : by_dim) counts[std::to_string(d)] = c;
  report.results = {{"faces", rows}, {"count", faces.size()}, {"by_dim", counts}};
  return finish(report, out, o.as_json, [&] {
    for (const auto& f : faces.all()) {
      out << (f.signs.str().empty() ? "." : f.signs.str()) << "  dim " << f.dim
          << (f.essentially_bounded ? "  bounded" : "") << '\n';
    }
    out << faces.size() << " faces\n";
  });
}

int cmd_flats(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("flats", arr);
  const TitsAlgebra alg = report.timed("setup", [&] { return TitsAlgebra(arr); });
  const auto& lattice = alg.lattice();
  json rows = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Flat& flat = lattice[FlatId{i}];
    rows.push_back({{"closure", flat.closure},
                    {"dim", flat.dim},
                    {"rank", flat.rank},
                    {"mobius_to_top", lattice.mobius(FlatId{i}, lattice.top())}});
  }
  report.results = {{"flats", rows}, {"charpoly", to_string(charpoly(lattice))}};
  return finish(report, out, o.as_json, [&] {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Flat& flat = lattice[FlatId{i}];
      out << "{";
      for (std::size_t k = 0; k < flat.closure.size(); ++k) out << (k ? "," : "") << flat.closure[k];
      out << "}  rank " << flat.rank << "  mu " << lattice.mobius(FlatId{i}, lattice.top()) << '\n';
    }
    out << lattice.size() << " flats\n";
  });
}

int cmd_charpoly(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("charpoly", arr);
  const auto chi = report.timed("charpoly", [&] { return charpoly(arr); });
  report.results = {{"charpoly", to_string(chi)}};
  return finish(report, out, o.as_json, [&] { out << to_string(chi) << '\n'; });
}

int cmd_zaslavsky(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("zaslavsky", arr);
  const TitsAlgebra alg = report.timed("setup", [&] { return TitsAlgebra(arr); });
  zaslavsky_checks(report, alg);
  return finish(report, out, o.as_json, [&] {
    out << "chambers " << report.results["zaslavsky"]["chambers"].get<std::size_t>() << '\n';
    out << "bounded chambers " << report.results["zaslavsky"]["essentially_bounded_chambers"].get<std::size_t>()
        << '\n';
  });
}

template <typename Scalar>
void print_element(std::ostream& out, const FaceSet& faces, const TitsElement<Scalar>& w) {
  for (const auto& [f, c] : w.terms()) {
    const std::string sv = faces[f].signs.str();
    out << (sv.empty() ? "." : sv) << "  " << io::coefficient_string(c) << '\n';
  }
}

int cmd_element(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("element " + o.which, arr);
  const TitsAlgebra alg = report.timed("setup", [&] { return TitsAlgebra(arr); });
  const auto& faces = alg.faces();
  const Polynomial t = Polynomial::variable();
  std::function<void()> human;

  if (o.which == "unit" || o.which == "takeuchi") {
    const bool unit = o.which == "unit";
    const auto w = unit ? unit_element(alg) : takeuchi_element(alg);
    report.results = {{"element", io::element_to_json(faces, w)}, {"parameter", unit ? "1" : "-1"}};
    characteristic_check(report, "characteristic." + o.which, is_characteristic(alg, w, Rational(unit ? 1 : -1)));
    human = [&, w] { print_element(out, faces, w); };
  } else if (o.which == "adams") {
    if (arr.kind() == ArrangementKind::SignedBraid) {
      const auto w = adams_B(alg);
      report.results = {{"element", io::element_to_json(faces, w)}, {"parameter", to_string(adams_B_parameter())}};
      characteristic_check(report, "characteristic.adams", is_characteristic(alg, w, adams_B_parameter()));
      human = [&, w] { print_element(out, faces, w); };
    } else {
      const auto w = adams_A(alg);
      report.results = {{"element", io::element_to_json(faces, w)},
                        {"normalized", io::element_to_json(faces, normalized_adams_A(alg))},
                        {"parameter", "t"}};
      characteristic_check(report, "characteristic.adams", is_characteristic(alg, normalized_adams_A(alg), t));
      human = [&, w] { print_element(out, faces, w); };
    }
  } else if (o.which == "coordinate") {
    const auto w = coordinate_element(alg);
    report.results = {{"element", io::element_to_json(faces, w)}, {"parameter", "t"}};
    characteristic_check(report, "characteristic.coordinate", is_characteristic(alg, w, t));
    human = [&, w] { print_element(out, faces, w); };
  } else {
    const auto nu = compute_intrinsic(report, alg, o);
    json profiles = json::array();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      json p = profile_to_json(nu.profiles[i]);
      p["sign_vector"] = faces[FaceId{i}].signs.str();
      profiles.push_back(p);
    }
    report.results["element"] = io::element_to_json(faces, nu.element);
    report.results["profiles"] = profiles;
    report.results["min_dim"] = nu.min_dim;
    if (nu.available()) {
      const auto ch = check_intrinsic_characteristic(alg, nu);
      std::string lhs;
      for (const auto& row : ch.flats) lhs += (lhs.empty() ? "" : "; ") + to_string(row.character);
      report.check("intrinsic.characteristic", ch.characteristic, "chi_X(nu_t) = [" + lhs + "]", "t^rank(X)");
    }
    human = [&, nu] { print_element(out, faces, nu.element); };
  }
  return finish(report, out, o.as_json, human);
}

int cmd_verify(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("verify " + o.which, arr);
  const TitsAlgebra alg = report.timed("setup", [&] { return TitsAlgebra(arr); });
  const bool all = o.which == "all";
  if (all || o.which == "characteristic") {
    report.timed("characteristic", [&] {
      exact_characteristic_checks(report, alg);
      return 0;
    });
  }
  if (all) {
    unit_identity_check(report, alg);
    zaslavsky_checks(report, alg);
  }
  if (all || o.which == "kung") {
    report.timed("kung", [&] {
      kung_checks(report, alg, o);
      return 0;
    });
  }
  if (all || o.which == "deletion") {
    report.timed("deletion", [&] {
      deletion_checks(report, alg, o);
      return 0;
    });
  }
  if (all || o.which == "product") {
    report.timed("product", [&] {
      adams_product_check(report, alg);
      return 0;
    });
  }
  if (all || o.which == "product" || o.which == "characteristic") {
    const auto nu = compute_intrinsic(report, alg, o);
    if (all) {
      intrinsic_checks(report, alg, nu, o);
    } else if (o.which == "characteristic" && nu.available()) {
      const auto ch = check_intrinsic_characteristic(alg, nu);
      report.check("intrinsic.characteristic", ch.characteristic, "chi_X(nu_t) within half-widths",
                   "t^rank(X)");
    } else if (o.which == "product" && nu.available()) {
      const double s = o.s.empty() ? 2.0 : parse_rational(o.s).convert_to<double>();
      const double t = o.t.empty() ? -1.5 : parse_rational(o.t).convert_to<double>();
      const auto r = verify_intrinsic_product(alg, nu, s, t);
      report.check("intrinsic.product", r.passed, "max |(nu_s nu_t - nu_st)^G| = " + fixed(r.max_deviation),
                   "tolerance margin " + fixed(-r.max_excess));
    }
  }
  return finish(report, out, o.as_json, [&] {
    out << (report.passed() ? "all checks passed" : "some checks failed") << '\n';
  });
}

int cmd_intrinsic(const Options& o, const Arrangement& arr, std::ostream& out) {
  Report report("intrinsic", arr);
  const TitsAlgebra alg = report.timed("setup", [&] { return TitsAlgebra(arr); });
  const auto nu = compute_intrinsic(report, alg, o);
  const auto& faces = alg.faces();
  json profiles = json::array();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    json p = profile_to_json(nu.profiles[i]);
    p["sign_vector"] = faces[FaceId{i}].signs.str();
    profiles.push_back(p);
  }
  report.results["profiles"] = profiles;
  report.results["exact_only"] = o.exact_only;
  std::optional<KlivansSwartzReport> ks;
  const auto chambers = faces.chambers();
  const bool chambers_ready = std::all_of(chambers.begin(), chambers.end(),
                                          [&](FaceId c) { return nu.profiles[c.value].available(); });
  if (chambers_ready) {
    ks = klivans_swartz_charpoly(alg, nu);
    report.results["klivans_swartz"] = ks_to_json(*ks);
    bool ok = true;
    for (std::size_t j = 0; j < ks->deviation.size(); ++j) ok = ok && ks->deviation[j] <= ks->half_width[j] + 1e-9;
    report.check("intrinsic.klivans_swartz", ok, "reconstructed " + to_string(ks->reconstructed),
                 "exact " + to_string(ks->exact));
  } else {
    report.results["klivans_swartz"] = "unavailable: chamber profiles need Monte Carlo";
  }
  profile_checks(report, alg, nu);
  return finish(report, out, o.as_json, [&] {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const auto& p = nu.profiles[i];
      const std::string sv = faces[FaceId{i}].signs.str();
      out << (sv.empty() ? "." : sv) << "  " << to_string(p.method);
      if (p.available()) {
        for (std::size_t k = p.lineality_dim; k <= p.dim; ++k) {
          out << "  v" << k << "=" << with_width(p.values[k], p.half_width[k]);
        }
      }
      out << '\n';
    }
    if (ks) out << "klivans-swartz " << to_string(ks->reconstructed) << "  (exact " << to_string(ks->exact) << ")\n";
  });
}

void add_arrangement_options(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.family, "Builder family")
      ->check(CLI::IsMember({"braid", "signed-braid", "coordinate", "generic"}));
  sub->add_option("--n", o.n, "Ambient dimension");
  sub->add_option("--m", o.m, "Number of hyperplanes (generic)");
  sub->add_option("--seed", o.seed, "Seed for the generic builder and Monte Carlo");
  sub->add_option("--file", o.file, "Arrangement JSON file");
  sub->add_flag("--json", o.as_json, "Emit a JSON report");
}

void add_intrinsic_options(CLI::App* sub, Options& o) {
  sub->add_option("--samples", o.samples, "Monte Carlo samples per cone");
  sub->add_flag("--exact-only", o.exact_only, "Never sample");
  sub->add_option("--workers", o.workers, "Sampling threads (0 = all cores)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Faces, flats and characteristic elements of real hyperplane arrangements", "titskit"};
  app.require_subcommand(1);
  Options o;

  auto* faces = app.add_subcommand("faces", "List faces with dimensions and witnesses");
  auto* flats = app.add_subcommand("flats", "List flats with ranks and Mobius values");
  auto* chi = app.add_subcommand("charpoly", "Characteristic polynomial");
  auto* zaslavsky = app.add_subcommand("zaslavsky", "Chamber counts from the census and from chi");
  auto* element = app.add_subcommand("element", "Print a characteristic element");
  auto* adams = app.add_subcommand("adams", "Print the Adams element of a braid or signed braid arrangement");
  auto* verify = app.add_subcommand("verify", "Run identity checks");
  auto* intrinsic = app.add_subcommand("intrinsic", "Conic intrinsic volumes of every face");
  for (auto* sub : {faces, flats, chi, zaslavsky, element, adams, verify, intrinsic}) add_arrangement_options(sub, o);
  for (auto* sub : {element, verify, intrinsic}) add_intrinsic_options(sub, o);

  element->add_option("kind", o.which, "Element")
      ->required()
      ->check(CLI::IsMember({"unit", "takeuchi", "adams", "coordinate", "intrinsic"}));
  verify->add_option("check", o.which, "Check group")
      ->required()
      ->check(CLI::IsMember({"characteristic", "kung", "deletion", "product", "all"}));
  verify->add_option("--s", o.s, "First parameter (rational)");
  verify->add_option("--t", o.t, "Second parameter (rational)");
  verify->add_option("--hyperplane", o.hyperplane, "Hyperplane index for deletion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    const Arrangement arr = make_arrangement(o);
    if (*faces) return cmd_faces(o, arr, out);
    if (*flats) return cmd_flats(o, arr, out);
    if (*chi) return cmd_charpoly(o, arr, out);
    if (*zaslavsky) return cmd_zaslavsky(o, arr, out);
    if (*element) return cmd_element(o, arr, out);
    if (*adams) {
      o.which = "adams";
      return cmd_element(o, arr, out);
    }
    if (*verify) return cmd_verify(o, arr, out);
    return cmd_intrinsic(o, arr, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace titskit::cli
