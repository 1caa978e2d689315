#include "dualrisk/lottery_io.hpp"

#include <fstream>
#include <sstream>

#include "dualrisk/error.hpp"

namespace dualrisk {

namespace {

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

Lottery parse_lottery(std::string_view text) {
  std::vector<State> states;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string outcome_text, prob_text, extra;
    if (!(fields >> outcome_text)) continue;
    if (!(fields >> prob_text))
      throw Error(ErrorCode::ParseError, at_line(line_no, "expected '<outcome> <probability>'"));
    if (fields >> extra) throw Error(ErrorCode::ParseError, at_line(line_no, "unexpected token '" + extra + "'"));

    State s;
    try {
      s.outcome = parse_rational(outcome_text);
      s.probability = parse_rational(prob_text);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, at_line(line_no, e.what()));
    }
    if (s.outcome < 0) throw Error(ErrorCode::NegativeOutcome, at_line(line_no, "outcome " + outcome_text));
    if (s.probability <= 0)
      throw Error(ErrorCode::NonPositiveProbability, at_line(line_no, "probability " + prob_text));
    states.push_back(std::move(s));
  }
  if (states.empty()) throw Error(ErrorCode::ParseError, "no states found");
  Rational total = 0;
  for (const auto& s : states) total += s.probability;
  if (total != 1)
    throw Error(ErrorCode::NonUnitMass, at_line(line_no, "probabilities sum to " + to_string(total)));
  return Lottery::make(std::move(states));
}

Lottery read_lottery_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_lottery(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string format_lottery(const Lottery& lottery, std::string_view header) {
  std::string out;
  if (!header.empty()) {
    std::istringstream lines{std::string(header)};
    std::string line;
    while (std::getline(lines, line)) out += "# " + line + "\n";
  }
  for (const auto& s : lottery.states()) out += to_string(s.outcome) + " " + to_string(s.probability) + "\n";
  return out;
}

}  // namespace dualrisk
