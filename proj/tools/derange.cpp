// derange: exact combinatorics of derangement-graph cliques and orthogonal
// Latin squares, with the modular obstruction machinery and the order-6
// nonexistence searches.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "derange/clique.hpp"
#include "derange/errors.hpp"
#include "derange/latin.hpp"
#include "derange/obstruction.hpp"
#include "derange/permutation.hpp"
#include "derange/report.hpp"
#include "derange/spectral.hpp"
#include "derange/verify.hpp"

namespace {

using namespace derange;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceLimit = 3;

struct Common {
  std::string format = "tsv";
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 12345;
  bool no_cache = false;

  CacheOptions cache() const { return CacheOptions{!no_cache, ""}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: tsv, json or text")
        ->check(CLI::IsMember({"tsv", "json", "text"}));
    cmd->add_option("--out", out, "Write the report/artifact to this file");
    cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    cmd->add_option("--seed", seed, "Seed for sampled suites");
    cmd->add_flag("--no-cache", no_cache, "Bypass the on-disk cache");
  }
};

void write_output(const Common& c, const std::string& content) {
  if (c.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open output file " + c.out);
  f << content;
}

std::string render_text(const Table& t) {
  std::vector<size_t> width(t.columns.size());
  for (size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  };
  emit(t.columns);
  for (const auto& row : t.rows) emit(row);
  return out;
}

void emit_table(const Common& c, const Table& t) {
  switch (parse_output_format(c.format)) {
    case OutputFormat::tsv: write_output(c, to_tsv(t)); break;
    case OutputFormat::json: write_output(c, to_json(t)); break;
    case OutputFormat::text: write_output(c, render_text(t)); break;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::int64_t> primes_dividing(int n) {
  std::vector<std::int64_t> primes;
  for (int p = 2; p <= n; ++p)
    if (is_prime(p) && n % p == 0) primes.push_back(p);
  return primes;
}

// ---- perm ---------------------------------------------------------------

struct PermArgs {
  Common common;
  std::string text;
  std::string compose_with;
};

int run_perm(const PermArgs& a) {
  const Permutation sigma = Permutation::parse(a.text);
  if (!a.compose_with.empty()) {
    const Permutation tau = Permutation::parse(a.compose_with);
    const Permutation product = compose(sigma, tau);
    Table t;
    t.columns = {"sigma", "tau", "sigma_tau", "n_fixed"};
    t.add_row({sigma.str(), tau.str(), product.str(),
               std::to_string(n_fixed(sigma, tau))});
    emit_table(a.common, t);
    return kExitOk;
  }
  Table t;
  t.columns = {"permutation", "degree",     "inverse", "fixed_points",
               "cycle_type",  "parity",     "class"};
  const int fixed = sigma.fixed_point_count();
  const std::string cls = fixed == 0              ? "derangement"
                          : fixed == 1            ? "near-derangement"
                          : sigma.is_identity()   ? "identity"
                                                  : "other";
  t.add_row({sigma.str(), std::to_string(sigma.degree()), sigma.inverse().str(),
             std::to_string(fixed), cycle_type(sigma).str(),
             sigma.is_even() ? "even" : "odd", cls});
  emit_table(a.common, t);
  return kExitOk;
}

// ---- latin ---------------------------------------------------------------

int run_latin_check(const Common& c, const std::string& file) {
  const LatinSquare sq = parse_square(read_file(file));
  Table t;
  t.columns = {"file", "order", "latin"};
  t.add_row({file, std::to_string(sq.order()), "true"});
  emit_table(c, t);
  return kExitOk;
}

int run_latin_orth(const Common& c, const std::string& file) {
  const auto [a, b] = parse_square_pair(read_file(file));
  Table t;
  t.columns = {"file", "order", "orthogonal"};
  t.add_row({file, std::to_string(a.order()),
             are_orthogonal(a, b) ? "true" : "false"});
  emit_table(c, t);
  return kExitOk;
}

int run_latin_gamma(const Common& c, const std::string& file) {
  const auto [a, b] = parse_square_pair(read_file(file));
  write_output(c, format_clique_pair(gamma(a, b)));
  return kExitOk;
}

int run_latin_omega(const Common& c, const std::string& file) {
  const auto pair = parse_clique_pair(read_file(file));
  const auto [a, b] = omega(pair);
  write_output(c, format_square_pair(a, b));
  return kExitOk;
}

int run_latin_complete(const Common& c, const std::string& file) {
  const LatinRectangle rect = parse_rectangle(read_file(file));
  write_output(c, format_square(complete_rectangle(rect)));
  return kExitOk;
}

int run_latin_ff(const Common& c, int n) {
  std::string out;
  for (const auto& sq : finite_field_squares(n)) {
    if (!out.empty()) out += "\n";
    out += format_square(sq);
  }
  write_output(c, out);
  return kExitOk;
}

// ---- cliques --------------------------------------------------------------

struct CliquesArgs {
  Common common;
  int n = 4;
  bool identity_only = false;
  bool count_only = false;
  bool allow_long = false;
};

int run_cliques(const CliquesArgs& a) {
  EnumerateOptions opts;
  opts.allow_long = a.allow_long;
  opts.identity_only = a.identity_only;
  opts.threads = a.common.threads;
  opts.cache = a.common.cache();

  if (a.count_only) {
    const auto count = enumerate_maximal_cliques(a.n, opts, nullptr);
    std::cout << count << "\n";
    return kExitOk;
  }

  std::uint64_t count = 0;
  std::string buffer;
  auto flush = [&](std::ostream& os) {
    os << buffer;
    buffer.clear();
  };
  if (a.common.out.empty()) {
    count = enumerate_maximal_cliques(a.n, opts, [&](const MaximalClique& c) {
      buffer += format_clique(c) + "\n";
      if (buffer.size() > 1 << 20) flush(std::cout);
    });
    flush(std::cout);
  } else {
    std::ofstream f(a.common.out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file " + a.common.out);
    count = enumerate_maximal_cliques(a.n, opts, [&](const MaximalClique& c) {
      buffer += format_clique(c) + "\n";
      if (buffer.size() > 1 << 20) flush(f);
    });
    flush(f);
    std::cout << count << "\n";
  }
  return kExitOk;
}

// ---- mols ------------------------------------------------------------------

struct MolsArgs {
  Common common;
  int n = 4;
  int r = 2;
  std::string scope = "exhaustive";
  bool allow_long = false;
  bool construct_ff = false;
  bool x5_report = false;
  std::string squares_out;
};

int run_mols(const MolsArgs& a) {
  FamilySearchOptions opts;
  opts.allow_long = a.allow_long;
  opts.threads = a.common.threads;
  opts.cache = a.common.cache();

  if (a.x5_report) {
    if (a.n != 5) throw Error("--x5-report requires --n 5");
    const auto rep = x5_structure_report(opts);
    Table t;
    t.columns = {"identity_cliques", "participating", "participating_cyclic",
                 "odd_derangement_members", "all_cyclic"};
    t.add_row({std::to_string(rep.identity_cliques),
               std::to_string(rep.participating),
               std::to_string(rep.participating_cyclic),
               std::to_string(rep.odd_derangement_members),
               rep.all_cyclic ? "true" : "false"});
    emit_table(a.common, t);
    return rep.all_cyclic && rep.odd_derangement_members == 0
               ? kExitOk
               : kExitVerificationFailed;
  }

  std::vector<DisconnectedFamily> families;
  if (a.construct_ff) {
    families.push_back(family_from_squares(finite_field_squares(a.n)));
  } else {
    families = find_disconnected_families(a.n, a.r,
                                          a.scope == "first"
                                              ? SearchScope::first_found
                                              : SearchScope::exhaustive,
                                          opts);
  }

  write_output(a.common, format_family_file(families));
  if (!a.common.out.empty()) std::cout << families.size() << "\n";

  if (!a.squares_out.empty()) {
    std::string out;
    int k = 0;
    for (const auto& f : families) {
      if (f.cliques.size() != 2) continue;
      OrderedCliquePair pair;
      pair.n = f.n;
      pair.row_cliques = f.cliques[0].members;
      pair.col_cliques = f.cliques[1].members;
      const auto [sa, sb] = omega(pair);
      out += "# pair " + std::to_string(++k) + "\n";
      out += format_square_pair(sa, sb) + "\n";
    }
    std::ofstream f(a.squares_out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file " + a.squares_out);
    f << out;
  }
  return kExitOk;
}

// ---- rank -------------------------------------------------------------------

struct RankArgs {
  Common common;
  int n = 4;
  std::vector<std::int64_t> primes;
  bool rational = false;
  std::string dump_file;
};

int run_rank(const RankArgs& a) {
  std::vector<Field> fields;
  if (!a.rational && a.primes.empty()) {
    fields.push_back(Field::rationals());
    for (const auto p : primes_dividing(a.n)) fields.push_back(Field::gf(p));
  } else {
    if (a.rational) fields.push_back(Field::rationals());
    for (const auto p : a.primes) fields.push_back(Field::gf(p));
  }

  Table t;
  t.columns = {"n", "field", "rank", "predicted", "match"};
  bool all_match = true;
  for (const auto& field : fields) {
    const auto rank = projection_image_dim(a.n, field, a.common.cache());
    const auto predicted = predicted_projection_dim(a.n, field);
    std::string match = "na";
    if (predicted >= 0) {
      match = static_cast<std::int64_t>(rank) == predicted ? "true" : "false";
      if (match == "false") all_match = false;
    }
    t.add_row({std::to_string(a.n), field.str(), std::to_string(rank),
               predicted >= 0 ? std::to_string(predicted) : "none", match});
  }
  emit_table(a.common, t);

  if (!a.dump_file.empty()) {
    if (a.primes.size() != 1)
      throw Error("--dump needs exactly one --prime selecting the reduction");
    const auto& m = fixed_point_matrix(a.n, a.common.cache());
    PrimeFieldMatrix pm = PrimeFieldMatrix::zero(a.primes[0], m.size, m.size);
    for (std::size_t i = 0; i < m.entries.size(); ++i)
      pm.entries[i] = static_cast<std::uint8_t>(m.entries[i] % a.primes[0]);
    std::ofstream f(a.dump_file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file " + a.dump_file);
    f << dump(pm);
  }
  return all_match ? kExitOk : kExitVerificationFailed;
}

// ---- spectrum -----------------------------------------------------------------

struct SpectrumArgs {
  Common common;
  int n = 4;
  bool verify_eigen = false;
};

int run_spectrum(const SpectrumArgs& a) {
  Table t;
  t.columns = {"label", "dimension", "lambda_numerator", "lambda_denominator"};
  const std::vector<std::pair<ClassFunction, std::int64_t>> chars = {
      {trivial_character(a.n), 1},
      {sign_character(a.n), 1},
      {standard_character(a.n), a.n - 1},
      {natural_character(a.n), a.n},
  };
  for (const auto& [chi, d] : chars) {
    const auto rec = laplacian_eigenvalue(chi, d, a.n);
    t.add_row({rec.label, std::to_string(rec.dimension),
               std::to_string(rec.lambda_num), std::to_string(rec.lambda_den)});
  }
  emit_table(a.common, t);

  if (a.verify_eigen) {
    const bool ok = verify_eigenfunction(a.n);
    std::cout << (ok ? "eigenfunctions verified\n" : "eigenfunction check failed\n");
    return ok ? kExitOk : kExitVerificationFailed;
  }
  return kExitOk;
}

// ---- deps ---------------------------------------------------------------------

struct DepsArgs {
  Common common;
  int n = 4;
  std::vector<std::int64_t> primes;
  bool allow_long = false;
};

int run_deps(const DepsArgs& a) {
  FamilySearchOptions opts;
  opts.allow_long = a.allow_long;
  opts.threads = a.common.threads;
  opts.cache = a.common.cache();
  const auto pairs =
      find_disconnected_families(a.n, 2, SearchScope::exhaustive, opts);

  auto primes = a.primes;
  if (primes.empty()) primes = primes_dividing(a.n);

  Table t;
  t.columns = {"family", "p",           "members",     "span_dim",
               "bound",  "clique_deps", "non_clique_deps", "guaranteed"};
  for (size_t k = 0; k < pairs.size(); ++k)
    for (const auto p : primes) {
      const auto dim = family_span_dim(pairs[k], p, a.common.cache());
      const auto basis = dependency_basis(pairs[k], p, a.common.cache());
      const auto bound = family_span_bound(a.n, 2);
      const auto guaranteed = 2LL * a.n - bound - 2;
      t.add_row({std::to_string(k + 1), std::to_string(p),
                 std::to_string(basis.member_order.size()),
                 std::to_string(dim), std::to_string(bound),
                 std::to_string(basis.clique_vectors.size()),
                 std::to_string(basis.non_clique_vectors.size()),
                 std::to_string(guaranteed)});
    }
  emit_table(a.common, t);
  return kExitOk;
}

// ---- euler36 --------------------------------------------------------------------

struct EulerArgs {
  Common common;
  std::string mode = "obstruction";
  std::string certificate;
  bool allow_long = false;
  bool fast = false;
  bool placement_prune = false;
  bool no_checkpoint = false;
};

nlohmann::ordered_json tally_json(const RSetStageTally& t) {
  nlohmann::ordered_json j;
  j["pairs_considered"] = t.pairs_considered;
  j["rejected_eta_product"] = t.rejected_eta_product;
  j["entered"] = t.entered;
  j["rejected_six_sets"] = t.rejected_six_sets;
  j["rejected_placement"] = t.rejected_placement;
  j["rejected_parity_prefilter"] = t.rejected_parity_prefilter;
  j["rejected_parity_full"] = t.rejected_parity_full;
  j["survivors"] = t.survivors;
  return j;
}

int run_euler(const EulerArgs& a) {
  const bool do_obstruction = a.mode == "obstruction" || a.mode == "both";
  const bool do_exhaustive = a.mode == "exhaustive" || a.mode == "both";

  nlohmann::ordered_json cert_json;
  cert_json["format_version"] = kCacheFormatVersion;
  cert_json["n"] = 6;

  bool obstruction_none = true, exhaustive_none = true;

  if (do_obstruction) {
    RSetSearchOptions opts;
    opts.threads = a.common.threads;
    opts.conjugation_reduced = a.fast;
    opts.placement_pruning = a.placement_prune;
    opts.checkpoint = !a.no_checkpoint;
    opts.cache = a.common.cache();
    const auto cert = rset_search(6, opts);
    obstruction_none = cert.survivors.empty();

    nlohmann::ordered_json j;
    j["certified"] = cert.certified;
    j["conjugation_reduced"] = cert.conjugation_reduced;
    j["placement_pruning"] = cert.placement_pruning;
    j["derangements"] = cert.derangements;
    j["near_derangements"] = cert.near_derangements;
    j["buckets"] = nlohmann::ordered_json::array();
    for (const auto& b : cert.buckets) {
      nlohmann::ordered_json bj;
      bj["cycle_type"] = b.delta_type.str();
      bj["deltas"] = b.delta_count;
      bj["tally"] = tally_json(b.tally);
      j["buckets"].push_back(std::move(bj));
    }
    j["totals"] = tally_json(cert.totals());
    j["survivors"] = nlohmann::ordered_json::array();
    for (const auto& s : cert.survivors)
      j["survivors"].push_back(format_permutation_list(
          std::array{s.delta, s.eta1, s.eta2}));
    j["verdict"] = cert.verdict();
    cert_json["obstruction"] = std::move(j);
    std::cout << "obstruction verdict " << cert.verdict() << "\n";
  }

  if (do_exhaustive) {
    FamilySearchOptions opts;
    opts.allow_long = a.allow_long;
    opts.threads = a.common.threads;
    opts.checkpoint = !a.no_checkpoint;
    opts.cache = a.common.cache();
    const auto result = exhaustive_pair_search(6, opts);
    exhaustive_none = result.families.empty();

    nlohmann::ordered_json j;
    j["identity_cliques"] = result.tally.base_cliques;
    j["with_candidates"] = result.tally.with_candidates;
    j["candidate_ge_n"] = result.tally.candidate_ge_n;
    j["max_candidates"] = result.tally.max_candidates;
    j["partners_found"] = result.tally.partners;
    j["verdict"] = exhaustive_none ? "NONE" : "EXISTS";
    cert_json["exhaustive"] = std::move(j);
    std::cout << "exhaustive verdict " << (exhaustive_none ? "NONE" : "EXISTS")
              << "\n";
  }

  if (a.mode == "both") {
    cert_json["routes_agree"] = obstruction_none == exhaustive_none;
    std::cout << "routes agree: "
              << (obstruction_none == exhaustive_none ? "true" : "false")
              << "\n";
  }

  if (!a.certificate.empty()) {
    std::ofstream f(a.certificate, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open certificate file " + a.certificate);
    f << cert_json.dump(2) << "\n";
  }

  const bool none = obstruction_none && exhaustive_none;
  return none ? kExitOk : kExitVerificationFailed;
}

// ---- verify ---------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  int n = 3;
  bool allow_long = false;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  opts.threads = a.common.threads;
  opts.seed = a.common.seed;
  opts.allow_long = a.allow_long;
  opts.cache = a.common.cache();
  const auto results = verify_all(a.n, opts);

  Table t;
  t.columns = {"check", "status", "detail"};
  bool all_pass = true;
  for (const auto& r : results) {
    const std::string status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
    if (!r.pass) all_pass = false;
    t.add_row({r.name, status, r.detail});
  }
  emit_table(a.common, t);
  return all_pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of derangement-graph cliques, orthogonal "
               "Latin squares, and the order-6 nonexistence proof"};
  app.require_subcommand(1);

  PermArgs perm_args;
  auto* perm_cmd = app.add_subcommand("perm", "Inspect or compose permutations");
  perm_args.common.attach(perm_cmd);
  perm_cmd->add_option("permutation", perm_args.text,
                       "One-line notation, e.g. \"2 3 1\"")->required();
  perm_cmd->add_option("--compose", perm_args.compose_with,
                       "Compose with this permutation (right factor)");

  auto* latin_cmd = app.add_subcommand("latin", "Latin square operations");
  latin_cmd->require_subcommand(1);
  Common latin_common;
  std::string latin_file;
  int latin_ff_n = 5;
  auto* lc_check = latin_cmd->add_subcommand("check", "Validate a square file");
  auto* lc_orth = latin_cmd->add_subcommand("orth", "Test a pair file for orthogonality");
  auto* lc_gamma = latin_cmd->add_subcommand("gamma", "Map an orthogonal pair to an ordered clique pair");
  auto* lc_omega = latin_cmd->add_subcommand("omega", "Map an ordered clique pair back to squares");
  auto* lc_complete = latin_cmd->add_subcommand("complete", "Complete a Latin rectangle");
  auto* lc_ff = latin_cmd->add_subcommand("ff", "Emit the finite-field square family");
  for (auto* sub : {lc_check, lc_orth, lc_gamma, lc_omega, lc_complete}) {
    latin_common.attach(sub);
    sub->add_option("file", latin_file, "Input file")->required();
  }
  latin_common.attach(lc_ff);
  lc_ff->add_option("--n", latin_ff_n, "Prime order")->required();

  CliquesArgs cliques_args;
  auto* cliques_cmd = app.add_subcommand("cliques", "Enumerate maximal cliques of X_n");
  cliques_args.common.attach(cliques_cmd);
  cliques_cmd->add_option("--n", cliques_args.n, "Degree (2..6)")->required();
  cliques_cmd->add_flag("--identity-only", cliques_args.identity_only,
                        "Only cliques containing the identity");
  cliques_cmd->add_flag("--count-only", cliques_args.count_only,
                        "Print the count instead of the cliques");
  cliques_cmd->add_flag("--allow-long", cliques_args.allow_long,
                        "Permit the long n=6 full enumeration");

  MolsArgs mols_args;
  auto* mols_cmd = app.add_subcommand(
      "mols", "Search for families of pairwise disconnected cliques");
  mols_args.common.attach(mols_cmd);
  mols_cmd->add_option("--n", mols_args.n, "Degree (3..6)")->required();
  mols_cmd->add_option("--r", mols_args.r, "Family size (>= 2)");
  mols_cmd->add_option("--scope", mols_args.scope, "exhaustive or first")
      ->check(CLI::IsMember({"exhaustive", "first"}));
  mols_cmd->add_flag("--allow-long", mols_args.allow_long,
                     "Permit the long n=6 search");
  mols_cmd->add_flag("--construct-ff", mols_args.construct_ff,
                     "Build the family from the finite-field squares");
  mols_cmd->add_flag("--x5-report", mols_args.x5_report,
                     "Print the X_5 structure survey");
  mols_cmd->add_option("--squares-out", mols_args.squares_out,
                       "Also write each r=2 family as an orthogonal square pair");

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand(
      "rank", "Rank of the fixed-point matrix over a chosen field");
  rank_args.common.attach(rank_cmd);
  rank_cmd->add_option("--n", rank_args.n, "Degree (1..6)")->required();
  rank_cmd->add_option("--prime", rank_args.primes, "Prime modulus (repeatable)");
  rank_cmd->add_flag("--rational", rank_args.rational, "Exact rational rank");
  rank_cmd->add_option("--dump", rank_args.dump_file,
                       "Dump the reduced matrix (needs exactly one --prime)");

  SpectrumArgs spectrum_args;
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "Exact Laplacian eigenvalues for the built-in characters");
  spectrum_args.common.attach(spectrum_cmd);
  spectrum_cmd->add_option("--n", spectrum_args.n, "Degree")->required();
  spectrum_cmd->add_flag("--verify-eigenfunctions", spectrum_args.verify_eigen,
                         "Also verify the natural matrix entries (n <= 5)");

  DepsArgs deps_args;
  auto* deps_cmd = app.add_subcommand(
      "deps", "Dependency bases of disconnected pairs over GF(p)");
  deps_args.common.attach(deps_cmd);
  deps_cmd->add_option("--n", deps_args.n, "Degree (3..6)")->required();
  deps_cmd->add_option("--prime", deps_args.primes, "Prime modulus (repeatable)");
  deps_cmd->add_flag("--allow-long", deps_args.allow_long,
                     "Permit the long n=6 search");

  EulerArgs euler_args;
  auto* euler_cmd = app.add_subcommand(
      "euler36", "Order-6 nonexistence searches with certificates");
  euler_args.common.attach(euler_cmd);
  euler_cmd->add_option("--mode", euler_args.mode,
                        "obstruction, exhaustive or both")
      ->check(CLI::IsMember({"obstruction", "exhaustive", "both"}));
  euler_cmd->add_option("--certificate", euler_args.certificate,
                        "Write the stage-tally certificate to this JSON file");
  euler_cmd->add_flag("--allow-long", euler_args.allow_long,
                      "Permit the exhaustive clique-level scan");
  euler_cmd->add_flag("--fast", euler_args.fast,
                      "Conjugation-reduced delta sweep (certificate not certified)");
  euler_cmd->add_flag("--placement-prune", euler_args.placement_prune,
                      "Prune with the placement lemma before parity checks");
  euler_cmd->add_flag("--no-checkpoint", euler_args.no_checkpoint,
                      "Do not checkpoint progress to the cache directory");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run every invariant suite applicable to a degree");
  verify_args.common.attach(verify_cmd);
  verify_cmd->add_option("--n", verify_args.n, "Degree (3..6)")->required();
  verify_cmd->add_flag("--allow-long", verify_args.allow_long,
                       "Include the n=6 exhaustive clique-level scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (perm_cmd->parsed()) return run_perm(perm_args);
    if (lc_check->parsed()) return run_latin_check(latin_common, latin_file);
    if (lc_orth->parsed()) return run_latin_orth(latin_common, latin_file);
    if (lc_gamma->parsed()) return run_latin_gamma(latin_common, latin_file);
    if (lc_omega->parsed()) return run_latin_omega(latin_common, latin_file);
    if (lc_complete->parsed())
      return run_latin_complete(latin_common, latin_file);
    if (lc_ff->parsed()) return run_latin_ff(latin_common, latin_ff_n);
    if (cliques_cmd->parsed()) return run_cliques(cliques_args);
    if (mols_cmd->parsed()) return run_mols(mols_args);
    if (rank_cmd->parsed()) return run_rank(rank_args);
    if (spectrum_cmd->parsed()) return run_spectrum(spectrum_args);
    if (deps_cmd->parsed()) return run_deps(deps_args);
    if (euler_cmd->parsed()) return run_euler(euler_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << " (required flag: " << e.required_flag
              << ")\n";
    return kExitResourceLimit;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
