// taskcodes: command-line experiments for fixed-length task descriptions.
//
// Subcommands: entropy, construct, moment, oracle, sweep, mismatch.
// Exit status: 0 success, 1 usage or input error, 2 numeric precondition
// violated, 3 enumeration cap exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "taskcodes/error.hpp"
#include "taskcodes/io.hpp"
#include "taskcodes/mismatch.hpp"
#include "taskcodes/partition.hpp"
#include "taskcodes/probability.hpp"
#include "taskcodes/random.hpp"
#include "taskcodes/task_code.hpp"

namespace tc = taskcodes;

namespace {

struct Config {
  std::string pmf_path;
  std::string markov_path;
  std::string q_path;
  std::string budgets_path;
  std::string partition_path;
  std::string blocks_out;
  std::string out_path;
  std::optional<double> rho;
  std::string alpha = "";
  std::string rate;
  std::optional<std::uint64_t> descriptions;
  std::string n_range = "1";
  std::uint64_t seed = 0;
  std::size_t random_size = 0;
  std::uint64_t cap = tc::kDefaultEnumerationCap;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NRange {
  unsigned first;
  unsigned last;
};

NRange parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const unsigned long n = std::stoul(text, &used);
      if (used != text.size() || n == 0) throw UsageError("");
      return {static_cast<unsigned>(n), static_cast<unsigned>(n)};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    std::size_t ua = 0, ub = 0;
    const unsigned long first = std::stoul(a, &ua);
    const unsigned long last = std::stoul(b, &ub);
    if (ua != a.size() || ub != b.size() || first == 0 || last < first) {
      throw UsageError("");
    }
    return {static_cast<unsigned>(first), static_cast<unsigned>(last)};
  } catch (const std::exception&) {
    throw UsageError("--n expects A..B with 1 <= A <= B, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

double require_rho(const Config& c) {
  if (!c.rho) throw UsageError("--rho is required");
  return *c.rho;
}

std::uint64_t require_m(const Config& c) {
  if (!c.descriptions) throw UsageError("--M is required");
  return *c.descriptions;
}

tc::Pmf load_pmf(const Config& c) {
  if (!c.pmf_path.empty()) return tc::parse_pmf(tc::read_file(c.pmf_path));
  if (c.random_size > 0) {
    tc::InstanceRng rng(c.seed, 0);
    return tc::random_pmf(rng, c.random_size);
  }
  throw UsageError("--pmf FILE (or --random K) is required");
}

std::string q_label(const Config& c) {
  return std::filesystem::path(c.q_path).stem().string();
}

// --- subcommands -----------------------------------------------------------

void cmd_entropy(const Config& c, std::ostream& out) {
  if (!c.alpha.empty() && c.rho) throw UsageError("give --alpha or --rho, not both");
  if (c.alpha.empty() && !c.rho) throw UsageError("--alpha or --rho is required");

  if (!c.markov_path.empty()) {
    const auto source = tc::parse_markov(tc::read_file(c.markov_path));
    const auto range = parse_n_range(c.n_range);
    const double alpha = c.rho ? tc::rho_tilde(*c.rho) : parse_list(c.alpha, "--alpha").at(0);
    out << "n,alpha,entropy,per_symbol,enumerated_per_symbol\n";
    for (unsigned n = range.first; n <= range.last; ++n) {
      const double h = tc::markov_renyi_sum(source, alpha, n);
      std::string enumerated;
      try {
        const auto law = tc::markov_joint(source, n, c.cap);
        enumerated = tc::format_number(tc::renyi_entropy(law, alpha) / n);
      } catch (const tc::Error& e) {
        if (e.code() != tc::Errc::cap_exceeded) throw;
      }
      out << n << ',' << tc::format_number(alpha) << ',' << tc::format_number(h)
          << ',' << tc::format_number(h / n) << ',' << enumerated << '\n';
    }
    return;
  }

  const auto p = load_pmf(c);
  if (c.rho) {
    out << "rho,entropy\n"
        << tc::format_number(*c.rho) << ','
        << tc::format_number(tc::renyi_rho(p, *c.rho)) << '\n';
    return;
  }
  out << "alpha,entropy\n";
  for (double alpha : parse_list(c.alpha, "--alpha")) {
    out << tc::format_number(alpha) << ','
        << tc::format_number(tc::renyi_entropy(p, alpha)) << '\n';
  }
}

void write_blocks(const Config& c, const tc::Partition& partition) {
  if (c.blocks_out.empty()) return;
  std::ofstream f(c.blocks_out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.blocks_out);
  f << tc::partition_to_text(partition);
}

void cmd_construct(const Config& c, std::ostream& out) {
  if (!c.budgets_path.empty()) {
    const auto lambda = tc::parse_budgets(tc::read_file(c.budgets_path));
    const auto partition = tc::build_partition(lambda);
    const auto mu = lambda.mu();
    const auto bound = tc::subset_count_bound(mu, lambda.size());
    const auto check = tc::verify_budget(partition, lambda);
    write_blocks(c, partition);
    out << tc::partition_to_text(partition) << '\n';
    out << "mu,blocks,bound,bound_alpha,bound_at_alpha_two,budget_ok\n"
        << tc::to_string(mu) << ',' << partition.block_count() << ','
        << bound.value << ',' << tc::format_number(bound.alpha) << ','
        << bound.at_alpha_two << ',' << (check.ok ? "true" : "false") << '\n';
    return;
  }
  const auto p = load_pmf(c);
  const double rho = require_rho(c);
  const auto encoder = tc::build_encoder(p, rho, require_m(c));
  write_blocks(c, encoder.partition());
  out << tc::partition_to_text(encoder.partition()) << '\n';
  out << tc::report_csv_header() << '\n'
      << tc::report_csv_row(tc::encoder_report(p, encoder, rho)) << '\n';
}

void cmd_moment(const Config& c, std::ostream& out) {
  if (c.partition_path.empty()) throw UsageError("--partition FILE is required");
  const auto p = load_pmf(c);
  const double rho = require_rho(c);
  const auto partition = tc::partition_from_text(tc::read_file(c.partition_path));
  const std::uint64_t m = c.descriptions.value_or(partition.block_count());
  const tc::TaskEncoder encoder(partition, m);
  out << tc::report_csv_header() << '\n'
      << tc::report_csv_row(tc::encoder_report(p, encoder, rho)) << '\n';
}

void cmd_oracle(const Config& c, std::ostream& out) {
  const auto p = load_pmf(c);
  const double rho = require_rho(c);
  const std::uint64_t m = require_m(c);
  const auto best = tc::brute_force_optimum(p, m, rho);
  std::string constructed;
  try {
    constructed = tc::format_number(tc::moment(p, tc::build_encoder(p, rho, m), rho));
  } catch (const tc::Error& e) {
    if (e.code() != tc::Errc::m_too_small) throw;
  }
  write_blocks(c, best.partition);
  out << tc::partition_to_text(best.partition) << '\n';
  out << "M,rho,optimum,lower,upper,constructed\n"
      << m << ',' << tc::format_number(rho) << ','
      << tc::format_number(best.moment) << ','
      << tc::format_number(tc::lower_bound(p, m, rho)) << ','
      << tc::format_number(tc::upper_bound(p, m, rho)) << ',' << constructed
      << '\n';
}

tc::Rate require_rate(const Config& c) {
  if (c.rate.empty()) throw UsageError("--rate is required");
  return tc::Rate::parse(c.rate);
}

void mismatched_sweep(const Config& c, std::ostream& out) {
  const auto p = load_pmf(c);
  const auto q = tc::parse_pmf(tc::read_file(c.q_path));
  const double rho = require_rho(c);
  const auto rate = require_rate(c);
  const auto range = parse_n_range(c.n_range);
  const double delta = tc::sundaresan_divergence(p, q, tc::rho_tilde(rho)).value;
  out << tc::report_csv_header(true) << '\n';
  for (unsigned n = range.first; n <= range.last; ++n) {
    tc::MomentReport r;
    try {
      r = tc::mismatched_block_experiment(p, q, rate, rho, n, c.cap);
    } catch (const tc::Error& e) {
      if (e.code() != tc::Errc::rate_too_small_for_n) throw;
      r = tc::block_bounds(tc::iid_joint(p, n, c.cap), rate, rho);
    }
    out << tc::report_csv_row(r, q_label(c), delta) << '\n';
  }
}

void cmd_sweep(const Config& c, std::ostream& out) {
  const auto range = parse_n_range(c.n_range);
  if (!c.q_path.empty()) {
    if (!c.markov_path.empty()) throw UsageError("--q needs an IID --pmf source");
    mismatched_sweep(c, out);
    return;
  }
  const double rho = require_rho(c);
  const auto rate = require_rate(c);
  std::optional<tc::MarkovSource> source;
  std::optional<tc::Pmf> pmf;
  if (!c.markov_path.empty()) {
    source.emplace(tc::parse_markov(tc::read_file(c.markov_path)));
  } else {
    pmf.emplace(load_pmf(c));
  }
  out << tc::report_csv_header() << '\n';
  for (unsigned n = range.first; n <= range.last; ++n) {
    const auto law = source ? tc::markov_joint(*source, n, c.cap)
                            : tc::iid_joint(*pmf, n, c.cap);
    tc::MomentReport r;
    try {
      r = tc::block_experiment(law, rate, rho);
    } catch (const tc::Error& e) {
      // Below the construction threshold only the bounds are reported.
      if (e.code() != tc::Errc::rate_too_small_for_n) throw;
      r = tc::block_bounds(law, rate, rho);
    }
    out << tc::report_csv_row(r) << '\n';
  }
}

void cmd_mismatch(const Config& c, std::ostream& out) {
  if (c.q_path.empty()) throw UsageError("--q FILE is required");
  if (!c.rate.empty()) {
    mismatched_sweep(c, out);
    return;
  }
  const auto p = load_pmf(c);
  const auto q = tc::parse_pmf(tc::read_file(c.q_path));
  std::vector<double> alphas =
      c.alpha.empty() ? std::vector<double>{} : parse_list(c.alpha, "--alpha");
  if (c.rho) alphas.push_back(tc::rho_tilde(*c.rho));
  if (alphas.empty()) alphas.push_back(0.5);
  const double kl = tc::kl_divergence(p, q);
  out << "alpha,delta,renyi_div,kl\n";
  for (double alpha : alphas) {
    out << tc::format_number(alpha) << ','
        << tc::format_number(tc::sundaresan_divergence(p, q, alpha).value) << ','
        << tc::format_number(tc::renyi_divergence(p, q, alpha)) << ','
        << tc::format_number(kl) << '\n';
  }
}

int exit_code_for(tc::Errc code) {
  switch (code) {
    case tc::Errc::cap_exceeded:
      return 3;
    case tc::Errc::m_too_small:
    case tc::Errc::rate_too_small_for_n:
    case tc::Errc::invalid_alpha:
    case tc::Errc::invalid_rho:
    case tc::Errc::alphabet_too_large:
    case tc::Errc::support_violation:
      return 2;
    default:
      return 1;
  }
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--pmf", c.pmf_path, "PMF file, one probability per line");
  sub->add_option("--random", c.random_size,
                  "use a random full-support PMF over K symbols instead of --pmf");
  sub->add_option("--seed", c.seed, "seed for --random");
  sub->add_option("--cap", c.cap, "enumeration cap on n-tuples")
      ->check(CLI::Range(std::uint64_t{1} << 10, std::uint64_t{1} << 40));
  sub->add_option("--out", c.out_path, "write output here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  if (const char* env = std::getenv("TASKCODES_CAP")) {
    try {
      c.cap = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: TASKCODES_CAP must be an integer\n";
      return 1;
    }
  }

  CLI::App app{"Fixed-length task description codes: entropies, encoders, "
               "bounds and block-length sweeps"};
  app.require_subcommand(1);

  auto* entropy = app.add_subcommand("entropy", "Renyi entropy of a PMF or Markov source");
  add_common(entropy, c);
  entropy->add_option("--markov", c.markov_path, "Markov source file");
  entropy->add_option("--alpha", c.alpha, "Renyi order(s), comma separated");
  entropy->add_option("--rho", c.rho, "moment order; uses alpha = 1/(1+rho)");
  entropy->add_option("--n", c.n_range, "block lengths A..B (Markov only)");

  auto* construct = app.add_subcommand("construct", "build an encoder or a budgeted partition");
  add_common(construct, c);
  construct->add_option("--budgets", c.budgets_path, "budget file (direct lambda mode)");
  construct->add_option("--rho", c.rho, "moment order");
  construct->add_option("--M", c.descriptions, "number of descriptions");
  construct->add_option("--blocks", c.blocks_out, "also write the partition text here");

  auto* moment = app.add_subcommand("moment", "evaluate the moment of a given partition");
  add_common(moment, c);
  moment->add_option("--partition", c.partition_path, "partition text file");
  moment->add_option("--rho", c.rho, "moment order");
  moment->add_option("--M", c.descriptions, "number of descriptions (default: block count)");

  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum over partitions (|X| <= 10)");
  add_common(oracle, c);
  oracle->add_option("--rho", c.rho, "moment order");
  oracle->add_option("--M", c.descriptions, "number of descriptions");
  oracle->add_option("--blocks", c.blocks_out, "also write the optimal partition here");

  auto* sweep = app.add_subcommand("sweep", "block-length sweep at a fixed rate");
  add_common(sweep, c);
  sweep->add_option("--markov", c.markov_path, "Markov source file");
  sweep->add_option("--q", c.q_path, "design law for a mismatched sweep");
  sweep->add_option("--rho", c.rho, "moment order");
  sweep->add_option("--rate", c.rate, "rate R in bits per symbol (<= 6 decimals)");
  sweep->add_option("--n", c.n_range, "block lengths A..B");

  auto* mismatch = app.add_subcommand("mismatch", "divergence table or mismatched sweep");
  add_common(mismatch, c);
  mismatch->add_option("--q", c.q_path, "mismatched law Q");
  mismatch->add_option("--alpha", c.alpha, "divergence order(s), comma separated");
  mismatch->add_option("--rho", c.rho, "moment order (adds alpha = 1/(1+rho))");
  mismatch->add_option("--rate", c.rate, "run a mismatched sweep at this rate");
  mismatch->add_option("--n", c.n_range, "block lengths A..B for the sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::ostringstream buffer;
    if (entropy->parsed()) cmd_entropy(c, buffer);
    else if (construct->parsed()) cmd_construct(c, buffer);
    else if (moment->parsed()) cmd_moment(c, buffer);
    else if (oracle->parsed()) cmd_oracle(c, buffer);
    else if (sweep->parsed()) cmd_sweep(c, buffer);
    else if (mismatch->parsed()) cmd_mismatch(c, buffer);

    if (c.out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream f(c.out_path, std::ios::binary);
      if (!f) throw UsageError("cannot write " + c.out_path);
      f << buffer.str();
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const tc::Error& e) {
    std::cerr << "error (" << tc::errc_name(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}
