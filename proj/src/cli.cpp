#include "washprob/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "washprob/birthday.hpp"
#include "washprob/exactnum.hpp"
#include "washprob/ledger.hpp"
#include "washprob/lo.hpp"
#include "washprob/montecarlo.hpp"

namespace washprob::cli {

namespace {

using Json = nlohmann::ordered_json;
using exactnum::Prob;
using exactnum::Rat;

struct OutputSpec {
  std::string format = "table";
  int precision = 4;
  bool precision_user_set = false;

  int places(int family_default) const {
    return precision_user_set ? precision : family_default;
  }
};

using KvRows = std::vector<std::pair<std::string, std::string>>;

void render_kv(const OutputSpec& spec, std::ostream& out, const Json& payload,
               const KvRows& rows) {
  if (spec.format == "json") {
    out << payload.dump(2) << '\n';
    return;
  }
  if (spec.format == "tsv") {
    for (const auto& [key, value] : rows) out << key << '\t' << value << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows)
    out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

void render_rows(const OutputSpec& spec, std::ostream& out, const Json& payload,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  if (spec.format == "json") {
    out << payload.dump(2) << '\n';
    return;
  }
  const char sep = spec.format == "tsv" ? '\t' : ' ';
  std::vector<std::size_t> widths(header.size());
  if (spec.format == "table") {
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        widths[c] = std::max(widths[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << sep;
      out << cells[c];
      if (spec.format == "table" && c + 1 < cells.size())
        out << std::string(widths[c] - cells[c].size() + 1, ' ');
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

std::uint64_t exhaustive_guard_from_env() {
  const char* raw = std::getenv("WASHPROB_GUARD");
  if (raw == nullptr) return montecarlo::kDefaultExhaustiveGuard;
  std::uint64_t value = 0;
  for (const char* p = raw; *p != '\0'; ++p) {
    if (*p < '0' || *p > '9')
      throw CLI::ValidationError("WASHPROB_GUARD must be a positive integer");
    value = value * 10 + static_cast<std::uint64_t>(*p - '0');
    if (value > 1'000'000'000'000ULL)
      throw CLI::ValidationError("WASHPROB_GUARD must be at most 10^12");
  }
  if (value == 0) throw CLI::ValidationError("WASHPROB_GUARD must be >= 1");
  return value;
}

// ---------------------------------------------------------------- prob --

struct ProbArgs {
  unsigned n = 0, d = 1, k = 0, b = 0, g = 0;
};

void do_prob(const OutputSpec& spec, std::ostream& out, const std::string& family,
             const ProbArgs& a) {
  Prob p;
  std::string label;
  int family_default = 4;
  if (family == "birthday") {
    p = birthday::birthday_prob(a.n, a.k);
    label = "B(" + std::to_string(a.n) + ", " + std::to_string(a.k) + ")";
  } else if (family == "span") {
    p = birthday::span_birthday_prob(a.n, a.d, a.k);
    label = "B_" + std::to_string(a.d) + "(" + std::to_string(a.n) + ", " +
            std::to_string(a.k) + ")";
    family_default = 3;
  } else if (family == "boygirl") {
    p = birthday::boygirl_prob(a.n, a.b, a.g);
    label = "B(" + std::to_string(a.n) + ", " + std::to_string(a.b) + ", " +
            std::to_string(a.g) + ")";
  } else {
    p = birthday::boygirl_span_prob(a.n, a.d, a.b, a.g);
    label = "B_" + std::to_string(a.d) + "(" + std::to_string(a.n) + ", " +
            std::to_string(a.b) + ", " + std::to_string(a.g) + ")";
    family_default = 3;
  }
  const int places = spec.places(family_default);
  Json payload{{"family", family},
               {"n", a.n},
               {"d", a.d},
               {"numerator", p.num().str()},
               {"denominator", p.den().str()},
               {"decimal", p.to_decimal(places)}};
  KvRows rows{{"family", family}, {"n", std::to_string(a.n)}};
  if (family == "span" || family == "boygirl-span")
    rows.emplace_back("d", std::to_string(a.d));
  if (family == "birthday" || family == "span") {
    payload["k"] = a.k;
    rows.emplace_back("k", std::to_string(a.k));
  } else {
    payload["b"] = a.b;
    payload["g"] = a.g;
    rows.emplace_back("b", std::to_string(a.b));
    rows.emplace_back("g", std::to_string(a.g));
  }
  rows.emplace_back(label, p.to_fraction_string());
  rows.emplace_back("decimal", p.to_decimal(places));
  render_kv(spec, out, payload, rows);
}

// -------------------------------------------------------------- tables --

void do_tables(const OutputSpec& spec, std::ostream& out, const std::string& which) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  Json payload;
  payload["table"] = which;
  payload["rows"] = Json::array();
  if (which == "example1") {
    header = {"h", "B(252,h,h)", "B(365,h,h)"};
    for (unsigned h : {1u, 5u, 10u, 15u, 20u, 25u, 30u, 35u}) {
      const std::string a = birthday::boygirl_prob(252, h, h).to_decimal(spec.places(4));
      const std::string b = birthday::boygirl_prob(365, h, h).to_decimal(spec.places(4));
      rows.push_back({std::to_string(h), a, b});
      payload["rows"].push_back({{"h", h}, {"B(252,h,h)", a}, {"B(365,h,h)", b}});
    }
  } else if (which == "example2") {
    header = {"h", "B30(252,h,h)", "B30(365,h,h)"};
    for (unsigned h : {1u, 2u, 3u, 4u}) {
      const int places = spec.places(h == 4 ? 5 : 3);
      const std::string a = birthday::boygirl_span_prob(252, 30, h, h).to_decimal(places);
      const std::string b = birthday::boygirl_span_prob(365, 30, h, h).to_decimal(places);
      rows.push_back({std::to_string(h), a, b});
      payload["rows"].push_back({{"h", h}, {"B30(252,h,h)", a}, {"B30(365,h,h)", b}});
    }
  } else {  // chernoff
    header = {"t", "e^(-1/(2t))"};
    for (unsigned t : {10u, 20u, 30u, 40u, 50u}) {
      // truncated, matching the printed source table
      const std::string v =
          exactnum::format_truncated(birthday::chernoff_imbalance_bound(t, 1.0),
                                     spec.places(3));
      rows.push_back({std::to_string(t), v});
      payload["rows"].push_back({{"t", t}, {"bound", v}});
    }
  }
  render_rows(spec, out, payload, header, rows);
}

// -------------------------------------------------------------- search --

void do_search(const OutputSpec& spec, std::ostream& out, const std::string& family,
               unsigned n, unsigned d, const std::string& target_text) {
  Rat target_value = exactnum::parse_decimal(target_text);
  if (target_value <= 0 || target_value > 1)
    throw CLI::ValidationError("--target must be in (0, 1]");
  const Prob target = Prob::from_rational(target_value);
  birthday::Family fam;
  int family_default = 4;
  if (family == "birthday") {
    fam = birthday::Family::birthday;
  } else if (family == "span") {
    fam = birthday::Family::span;
    family_default = 3;
  } else if (family == "boygirl-balanced") {
    fam = birthday::Family::boygirl_balanced;
  } else {
    fam = birthday::Family::boygirl_span_balanced;
    family_default = 3;
  }
  const auto result = birthday::min_population_for(target, fam, n, d);
  const int places = spec.places(family_default);
  const bool balanced = family == "boygirl-balanced" || family == "boygirl-span-balanced";
  const std::string label = balanced ? "h" : "k";
  Json payload{{"family", family},
               {"n", n},
               {"d", d},
               {"target", target_text},
               {"k_star", result.k_star},
               {"prob_below", result.prob_below.to_decimal(places)},
               {"prob_at_k_star", result.prob_at_k_star.to_decimal(places)},
               {"prob_at_k_star_exact", result.prob_at_k_star.to_fraction_string()}};
  KvRows rows{{"family", family},
              {"n", std::to_string(n)},
              {"target", target_text},
              {label + "_star", std::to_string(result.k_star)},
              {"prob at " + label + "*-1", result.prob_below.to_decimal(places)},
              {"prob at " + label + "*",
               result.prob_at_k_star.to_decimal(places) + "  (" +
                   result.prob_at_k_star.to_fraction_string() + ")"}};
  if (family == "span" || family == "boygirl-span-balanced")
    rows.insert(rows.begin() + 2, {"d", std::to_string(d)});
  render_kv(spec, out, payload, rows);
}

// ------------------------------------------------------------ simulate --

void do_simulate(const OutputSpec& spec, std::ostream& out, const ProbArgs& a,
                 std::uint64_t trials, std::uint64_t seed, bool check_exhaustive) {
  birthday::CollisionSpec cs;
  const bool labeled = a.b > 0 || a.g > 0;
  if (labeled && a.k > 0)
    throw CLI::ValidationError("give either --k or --b/--g, not both");
  if (labeled && (a.b == 0 || a.g == 0))
    throw CLI::ValidationError("--b and --g must be given together");
  if (!labeled && a.k == 0)
    throw CLI::ValidationError("give a population: --k, or --b and --g");
  if (labeled)
    cs = birthday::CollisionSpec::boy_girl(a.n, a.d, a.b, a.g);
  else
    cs = birthday::CollisionSpec::unlabeled(a.n, a.d, a.k);

  const auto result = montecarlo::simulate_collision({cs, trials, seed});
  Prob exact = labeled ? birthday::boygirl_span_prob(a.n, a.d, a.b, a.g)
                       : birthday::span_birthday_prob(a.n, a.d, a.k);
  const double abs_err = std::abs(result.estimate - exact.to_double());

  char est[64], ci[64], exd[64], err[64];
  std::snprintf(est, sizeof(est), "%.6f", result.estimate);
  std::snprintf(ci, sizeof(ci), "%.6f", result.ci99_halfwidth);
  std::snprintf(exd, sizeof(exd), "%.6f", exact.to_double());
  std::snprintf(err, sizeof(err), "%.6f", abs_err);

  std::string spec_str = "n=" + std::to_string(a.n) + " d=" + std::to_string(a.d);
  if (labeled)
    spec_str += " b=" + std::to_string(a.b) + " g=" + std::to_string(a.g);
  else
    spec_str += " k=" + std::to_string(a.k);

  Json payload{{"spec", spec_str},
               {"trials", trials},
               {"seed", seed},
               {"hits", result.hits},
               {"estimate", result.estimate},
               {"ci99_halfwidth", result.ci99_halfwidth},
               {"exact", exact.to_fraction_string()},
               {"exact_decimal", exact.to_double()},
               {"abs_error", abs_err}};
  KvRows rows{{"spec", spec_str},
              {"trials", std::to_string(trials)},
              {"seed", std::to_string(seed)},
              {"hits", std::to_string(result.hits)},
              {"estimate", est},
              {"ci99 halfwidth", ci},
              {"exact", std::string(exd) + "  (" + exact.to_fraction_string() + ")"},
              {"|estimate-exact|", err}};
  if (check_exhaustive) {
    const Prob oracle = montecarlo::exhaustive_collision_prob(cs, exhaustive_guard_from_env());
    payload["exhaustive"] = oracle.to_fraction_string();
    payload["exhaustive_matches_closed_form"] = oracle == exact;
    rows.emplace_back("exhaustive oracle", oracle.to_fraction_string() +
                                               (oracle == exact ? "  (matches closed form)"
                                                                : "  (MISMATCH)"));
  }
  render_kv(spec, out, payload, rows);
}

// ------------------------------------------------------------------ lo --

void do_lo_dist(const OutputSpec& spec, std::ostream& out, const std::string& multiset) {
  const auto dist = lo::signed_sum_distribution(lo::GainMultiset::parse(multiset));
  std::vector<std::string> header{"sum", "patterns", "probability"};
  std::vector<std::vector<std::string>> rows;
  Json payload{{"multiset", multiset}, {"total_patterns", dist.total().str()}};
  payload["rows"] = Json::array();
  const int places = spec.places(4);
  for (auto it = dist.counts().rbegin(); it != dist.counts().rend(); ++it) {
    const Prob p(it->second, dist.total());
    rows.push_back({std::to_string(it->first), it->second.str(),
                    p.to_fraction_string() + " = " + p.to_decimal(places)});
    payload["rows"].push_back(
        {{"sum", it->first}, {"patterns", it->second.str()}, {"probability", p.to_fraction_string()}});
  }
  render_rows(spec, out, payload, header, rows);
}

void do_lo_sigma(const OutputSpec& spec, std::ostream& out, const std::string& multiset) {
  const auto m = lo::mean_and_sigma(lo::GainMultiset::parse(multiset));
  char sigma[64];
  std::snprintf(sigma, sizeof(sigma), "%.*f", spec.places(4), m.sigma);
  Json payload{{"multiset", multiset},
               {"mean", exactnum::rat_to_string(m.mean)},
               {"sigma_sq", m.sigma_sq.str()},
               {"sigma", m.sigma}};
  render_kv(spec, out, payload,
            {{"multiset", multiset},
             {"mean", exactnum::rat_to_string(m.mean)},
             {"sigma^2", m.sigma_sq.str()},
             {"sigma", sigma}});
}

void do_lo_maxprob(const OutputSpec& spec, std::ostream& out, const std::string& multiset) {
  const auto dist = lo::signed_sum_distribution(lo::GainMultiset::parse(multiset));
  const auto modal = lo::max_point_probability(dist);
  const int places = spec.places(4);
  Json payload{{"multiset", multiset},
               {"x_star", modal.x},
               {"probability", modal.probability.to_fraction_string()},
               {"decimal", modal.probability.to_decimal(places)}};
  render_kv(spec, out, payload,
            {{"multiset", multiset},
             {"x_star", std::to_string(modal.x)},
             {"probability", modal.probability.to_fraction_string() + " = " +
                                 modal.probability.to_decimal(places)}});
}

void do_lo_distinct(const OutputSpec& spec, std::ostream& out, const std::string& multiset) {
  const bool equal = lo::has_equal_distinct_sums(lo::GainMultiset::parse(multiset));
  Json payload{{"multiset", multiset}, {"has_equal_distinct_sums", equal}};
  render_kv(spec, out, payload,
            {{"multiset", multiset}, {"equal distinct sums", equal ? "yes" : "no"}});
}

void do_lo_verify_minsum(const OutputSpec& spec, std::ostream& out, unsigned n) {
  const auto report = lo::verify_minimal_sum_theorem(n);
  Json payload{{"n", report.n},
               {"sum_cap", report.sum_cap},
               {"sets_checked", report.sets_checked},
               {"violations", report.violations.size()},
               {"pow2_total", report.pow2_total},
               {"pow2_has_equal_sums", report.pow2_has_equal_sums},
               {"holds", report.holds()}};
  render_kv(spec, out, payload,
            {{"n", std::to_string(report.n)},
             {"sum cap (2^n - 1)", std::to_string(report.sum_cap)},
             {"sub-cap sets checked", std::to_string(report.sets_checked)},
             {"sub-cap sets without equal sums", std::to_string(report.violations.size())},
             {"powers-of-two total", std::to_string(report.pow2_total)},
             {"powers-of-two equal sums", report.pow2_has_equal_sums ? "yes" : "no"},
             {"minimal-sum property", report.holds() ? "holds" : "VIOLATED"}});
}

void do_lo_expected_gain(const OutputSpec& spec, std::ostream& out, unsigned n,
                         unsigned g, unsigned b, unsigned calendar_n, unsigned d) {
  const double value = lo::expected_gain_single_wash(n, g, b, calendar_n, d);
  const Prob collision = birthday::boygirl_span_prob(calendar_n, d, b, g);
  const exactnum::BigInt pow2m1 = (exactnum::BigInt(1) << n) - 1;
  const Rat factor(pow2m1 - n, pow2m1);
  char buf[64], pbuf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::snprintf(pbuf, sizeof(pbuf), "%.6f", collision.to_double());
  Json payload{{"n", n},
               {"g", g},
               {"b", b},
               {"calendar_n", calendar_n},
               {"d", d},
               {"collision_prob", collision.to_fraction_string()},
               {"loss_factor", exactnum::rat_to_string(factor)},
               {"expected_gain", value}};
  render_kv(spec, out, payload,
            {{"collision prob", std::string(pbuf) + "  (" + collision.to_fraction_string() + ")"},
             {"loss factor (1 - n/(2^n-1))", exactnum::rat_to_string(factor)},
             {"expected gain", buf}});
}

void do_lo_adjusted_mean(const OutputSpec& spec, std::ostream& out,
                         const std::string& multiset) {
  const auto dist = lo::signed_sum_distribution(lo::GainMultiset::parse(multiset));
  const Rat mean = lo::wash_adjusted_mean(dist);
  Json payload{{"multiset", multiset},
               {"adjusted_mean", exactnum::rat_to_string(mean)},
               {"decimal", exactnum::format_decimal(mean, spec.places(4))}};
  render_kv(spec, out, payload,
            {{"multiset", multiset},
             {"wash-adjusted mean", exactnum::rat_to_string(mean) + " = " +
                                        exactnum::format_decimal(mean, spec.places(4))}});
}

// ---------------------------------------------------------------- wash --

void do_wash(const OutputSpec& spec, std::ostream& out, const std::string& ledger_path,
             const std::string& out_dir) {
  std::ifstream in(ledger_path);
  if (!in) throw ledger::LedgerError("cannot open ledger file: " + ledger_path);
  const auto trades = ledger::parse_ledger(in);
  const auto adjustments = ledger::detect_wash_sales(trades);
  const auto applied = ledger::apply_adjustments(trades, adjustments);

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path adj_path = fs::path(out_dir) / "adjustments.csv";
  const fs::path report_path = fs::path(out_dir) / "report.json";
  {
    std::ofstream f(adj_path);
    if (!f) throw ledger::LedgerError("cannot write " + adj_path.string());
    f << ledger::adjustments_to_csv(adjustments);
  }
  {
    std::ofstream f(report_path);
    if (!f) throw ledger::LedgerError("cannot write " + report_path.string());
    f << ledger::report_to_json(applied.report) << '\n';
  }

  std::size_t asset_count = applied.report.assets.size();
  Json payload{{"trades", trades.size()},
               {"assets", asset_count},
               {"adjustments", adjustments.size()},
               {"disallowed_loss", exactnum::rat_to_string(applied.report.disallowed_loss_total)},
               {"allowed_loss", exactnum::rat_to_string(applied.report.allowed_loss_total)},
               {"taxable_rounded", applied.report.taxable_rounded_total.str()},
               {"open_lots", applied.lots.size()},
               {"adjustments_csv", adj_path.string()},
               {"report_json", report_path.string()}};
  render_kv(spec, out, payload,
            {{"trades", std::to_string(trades.size()) + " (" + std::to_string(asset_count) +
                            " asset" + (asset_count == 1 ? ")" : "s)")},
             {"wash-sale adjustments", std::to_string(adjustments.size())},
             {"disallowed loss", exactnum::rat_to_string(applied.report.disallowed_loss_total)},
             {"allowed loss", exactnum::rat_to_string(applied.report.allowed_loss_total)},
             {"taxable (rounded)", applied.report.taxable_rounded_total.str()},
             {"open lots", std::to_string(applied.lots.size())},
             {"wrote", adj_path.string() + ", " + report_path.string()}});
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "washprob: exact wash-sale likelihoods via birthday-problem variants,\n"
      "signed-sum capital-gain analysis, and ledger wash-sale detection.\n"
      "Probabilities use a span parameter d: a collision means two days\n"
      "strictly fewer than d apart, so an inclusive +-30-day window is d=31\n"
      "(the source tables use d=30; pick the reading you need)."};
  OutputSpec spec;
  app.add_option("--format", spec.format, "output format")
      ->check(CLI::IsMember({"table", "json", "tsv"}))
      ->capture_default_str();
  app.add_option_function<int>(
         "--precision",
         [&spec](int v) {
           spec.precision = v;
           spec.precision_user_set = true;
         },
         "decimal places for display")
      ->check(CLI::Range(1, 12));
  app.require_subcommand(1);

  ProbArgs pa;
  std::string which;

  // prob
  auto* prob = app.add_subcommand("prob", "exact collision probabilities");
  prob->fallthrough();
  prob->require_subcommand(1);
  auto add_n = [](CLI::App* c, unsigned& v) {
    c->add_option("-n,--n", v, "days in the year")->required()->check(CLI::PositiveNumber);
  };
  auto add_d = [](CLI::App* c, unsigned& v) {
    c->add_option("-d,--d", v, "span width (collision = strictly fewer than d days apart)")
        ->required()
        ->check(CLI::PositiveNumber);
  };
  auto add_k = [](CLI::App* c, unsigned& v) {
    c->add_option("-k,--k", v, "population size")->required()->check(CLI::PositiveNumber);
  };
  auto add_bg = [](CLI::App* c, unsigned& b, unsigned& g) {
    c->add_option("-b,--b", b, "boys (buys)")->required()->check(CLI::PositiveNumber);
    c->add_option("-g,--g", g, "girls (sells)")->required()->check(CLI::PositiveNumber);
  };
  for (const char* fam : {"birthday", "span", "boygirl", "boygirl-span"}) {
    auto* c = prob->add_subcommand(fam);
    c->fallthrough();
    add_n(c, pa.n);
    if (std::string(fam) == "span" || std::string(fam) == "boygirl-span") add_d(c, pa.d);
    if (std::string(fam) == "birthday" || std::string(fam) == "span")
      add_k(c, pa.k);
    else
      add_bg(c, pa.b, pa.g);
    c->callback([&, fam] { do_prob(spec, out, fam, pa); });
  }

  // tables
  auto* tables = app.add_subcommand("tables", "regenerate the reference tables");
  tables->fallthrough();
  tables->add_option("which", which, "example1 | example2 | chernoff")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "chernoff"}));
  tables->callback([&] { do_tables(spec, out, which); });

  // search
  auto* search = app.add_subcommand("search", "smallest population reaching a target probability");
  search->fallthrough();
  struct {
    std::string family;
    unsigned n = 0, d = 1;
    std::string target;
  } sa;
  search->add_option("--family", sa.family, "probability family")
      ->required()
      ->check(CLI::IsMember({"birthday", "span", "boygirl-balanced", "boygirl-span-balanced"}));
  search->add_option("-n,--n", sa.n, "days in the year")->required()->check(CLI::PositiveNumber);
  search->add_option("-d,--d", sa.d, "span width (span families)")->check(CLI::PositiveNumber);
  search->add_option("--target", sa.target, "target probability in (0,1], decimal")->required();
  search->callback([&] { do_search(spec, out, sa.family, sa.n, sa.d, sa.target); });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo collision estimate");
  simulate->fallthrough();
  ProbArgs ma;
  std::uint64_t trials = 0, seed = 0;
  bool check_exhaustive = false;
  simulate->add_option("--n", ma.n, "days in the year")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--d", ma.d, "span width")->check(CLI::PositiveNumber);
  simulate->add_option("--k", ma.k, "unlabeled population")->check(CLI::PositiveNumber);
  simulate->add_option("--b", ma.b, "boys (buys)")->check(CLI::PositiveNumber);
  simulate->add_option("--g", ma.g, "girls (sells)")->check(CLI::PositiveNumber);
  simulate->add_option("--trials", trials, "trial count")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "64-bit stream seed")->required();
  simulate->add_flag("--check-exhaustive", check_exhaustive,
                     "also run the exhaustive oracle (guarded; see WASHPROB_GUARD)");
  simulate->callback([&] { do_simulate(spec, out, ma, trials, seed, check_exhaustive); });

  // lo
  auto* lo_cmd = app.add_subcommand("lo", "signed-sum gain/loss analysis");
  lo_cmd->fallthrough();
  lo_cmd->require_subcommand(1);
  std::string multiset;
  struct {
    unsigned n = 0, g = 0, b = 0, calendar_n = 252, d = 30;
  } la;
  for (const char* sub : {"dist", "sigma", "maxprob", "distinct", "adjusted-mean"}) {
    auto* c = lo_cmd->add_subcommand(sub);
    c->fallthrough();
    c->add_option("multiset", multiset, "comma-separated positive integers")->required();
    c->callback([&, sub] {
      const std::string name(sub);
      if (name == "dist") return do_lo_dist(spec, out, multiset);
      if (name == "sigma") return do_lo_sigma(spec, out, multiset);
      if (name == "maxprob") return do_lo_maxprob(spec, out, multiset);
      if (name == "distinct") return do_lo_distinct(spec, out, multiset);
      return do_lo_adjusted_mean(spec, out, multiset);
    });
  }
  auto* minsum = lo_cmd->add_subcommand("verify-minsum");
  minsum->fallthrough();
  minsum->add_option("-n,--n", la.n, "set size (2..4)")->required()->check(CLI::Range(2u, 4u));
  minsum->callback([&] { do_lo_verify_minsum(spec, out, la.n); });
  auto* egain = lo_cmd->add_subcommand("expected-gain");
  egain->fallthrough();
  egain->add_option("-n,--n", la.n, "count of identical unit gains/losses")
      ->required()
      ->check(CLI::PositiveNumber);
  egain->add_option("-g,--g", la.g, "girls (sells)")->required()->check(CLI::PositiveNumber);
  egain->add_option("-b,--b", la.b, "boys (buys)")->required()->check(CLI::PositiveNumber);
  egain->add_option("--calendar-n", la.calendar_n, "days in the year")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  egain->add_option("--d", la.d, "span width")->check(CLI::PositiveNumber)->capture_default_str();
  egain->callback([&] { do_lo_expected_gain(spec, out, la.n, la.g, la.b, la.calendar_n, la.d); });

  // wash
  auto* wash = app.add_subcommand("wash", "detect wash sales in a transaction ledger");
  wash->fallthrough();
  std::string ledger_path, out_dir = ".";
  wash->add_option("ledger", ledger_path, "CSV ledger: date,asset,side,quantity,price[,origin]")
      ->required();
  wash->add_option("--out", out_dir, "output directory")->capture_default_str();
  wash->callback([&] { do_wash(spec, out, ledger_path, out_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ledger::LedgerError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const birthday::UnattainableTarget& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace washprob::cli
