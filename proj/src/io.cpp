#include "taskcodes/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "taskcodes/error.hpp"

namespace taskcodes {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    Line out{number, {}};
    std::size_t pos = first;
    while (pos < line.size()) {
      const auto end = line.find_first_of(" \t\r", pos);
      out.tokens.push_back(line.substr(pos, end - pos));
      if (end == std::string_view::npos) break;
      pos = line.find_first_not_of(" \t\r", end);
    }
    lines.push_back(std::move(out));
  }
  return lines;
}

Error parse_error(std::string_view what, std::size_t line, std::string_view why) {
  return Error(Errc::parse_error, std::string(what) + " line " +
                                      std::to_string(line) + ": " +
                                      std::string(why));
}

double parse_real(std::string_view token, std::string_view what, std::size_t line) {
  double value = 0.0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || p != token.data() + token.size()) {
    throw parse_error(what, line,
                      "expected a decimal number, got '" + std::string(token) + "'");
  }
  return value;
}

template <typename F>
auto rethrow_with_line(std::string_view what, std::size_t line, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    throw parse_error(what, line, e.what());
  }
}

}  // namespace

Pmf parse_pmf(std::string_view text) {
  const auto lines = tokenize(text);
  std::vector<double> masses;
  for (const auto& line : lines) {
    if (line.tokens.size() != 1) {
      throw parse_error("pmf", line.number, "expected one probability per line");
    }
    masses.push_back(parse_real(line.tokens[0], "pmf", line.number));
  }
  if (masses.empty()) throw parse_error("pmf", 1, "no probabilities found");
  return rethrow_with_line("pmf", lines.back().number,
                           [&] { return Pmf(std::move(masses)); });
}

MarkovSource parse_markov(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw parse_error("markov", 1, "empty file");
  const auto& head = lines[0];
  if (head.tokens.size() != 1) {
    throw parse_error("markov", head.number, "first line must hold the state count");
  }
  std::size_t states = 0;
  {
    const auto t = head.tokens[0];
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), states);
    if (ec != std::errc{} || p != t.data() + t.size() || states == 0) {
      throw parse_error("markov", head.number, "state count must be a positive integer");
    }
  }
  if (lines.size() != states + 2) {
    throw parse_error("markov", lines.back().number,
                      "expected an initial row and " + std::to_string(states) +
                          " transition rows");
  }
  auto read_row = [&](const Line& line) {
    if (line.tokens.size() != states) {
      throw parse_error("markov", line.number,
                        "expected " + std::to_string(states) + " entries");
    }
    std::vector<double> row;
    for (auto t : line.tokens) row.push_back(parse_real(t, "markov", line.number));
    return row;
  };
  auto initial = read_row(lines[1]);
  Pmf init = rethrow_with_line("markov", lines[1].number,
                               [&] { return Pmf(std::move(initial)); });
  std::vector<double> transitions;
  for (std::size_t s = 0; s < states; ++s) {
    const auto& line = lines[2 + s];
    auto row = read_row(line);
    rethrow_with_line("markov", line.number, [&] { return Pmf(row); });
    transitions.insert(transitions.end(), row.begin(), row.end());
  }
  return MarkovSource(std::move(init), std::move(transitions));
}

LambdaBudget parse_budgets(std::string_view text) {
  const auto lines = tokenize(text);
  std::vector<Budget> budgets;
  for (const auto& line : lines) {
    if (line.tokens.size() != 1) {
      throw parse_error("budgets", line.number, "expected one budget per line");
    }
    const auto t = line.tokens[0];
    if (t == "inf" || t == "Inf" || t == "INF") {
      budgets.push_back(Budget::infinite());
      continue;
    }
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size() || v == 0) {
      throw parse_error("budgets", line.number,
                        "budget must be a positive integer or inf");
    }
    budgets.push_back(Budget(v));
  }
  if (budgets.empty()) throw parse_error("budgets", 1, "no budgets found");
  return LambdaBudget(std::move(budgets));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // no "-0" in tables
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string report_csv_header(bool mismatch) {
  std::string h = "n,R,rho,M,N,moment,lower,upper,m_tilde,delta";
  if (mismatch) h += ",q_id,delta_bits";
  return h;
}

std::string report_csv_row(const MomentReport& r) {
  std::string row;
  row += std::to_string(r.n);
  row += ',' + format_number(r.rate);
  row += ',' + format_number(r.rho);
  row += ',' + std::to_string(r.descriptions);
  row += ',' + std::to_string(r.used);
  row += ',' + format_number(r.moment);
  row += ',' + format_number(r.lower);
  row += ',' + format_number(r.upper);
  row += ',' + format_number(r.m_tilde);
  row += ',' + format_number(r.delta);
  return row;
}

std::string report_csv_row(const MomentReport& r, std::string_view q_id,
                           double delta_bits) {
  return report_csv_row(r) + ',' + std::string(q_id) + ',' +
         format_number(delta_bits);
}

}  // namespace taskcodes
