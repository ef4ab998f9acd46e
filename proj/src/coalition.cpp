#include "amc/coalition.hpp"

#include <cctype>

#include "amc/error.hpp"

namespace amc {

namespace {

std::uint64_t bitFor(AgentId a) {
  if (a < 1 || a > kMaxAgents)
    throw ValidationError("agent id " + std::to_string(a) + " outside 1.." + std::to_string(kMaxAgents));
  return std::uint64_t{1} << (a - 1);
}

}  // namespace

Coalition::Coalition(std::initializer_list<AgentId> agents) {
  for (AgentId a : agents) mask_ |= bitFor(a);
}

Coalition::Coalition(const std::vector<AgentId>& agents) {
  for (AgentId a : agents) mask_ |= bitFor(a);
}

std::vector<AgentId> Coalition::members() const {
  std::vector<AgentId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Coalition::toString() const {
  std::string s = "{";
  bool first = true;
  for (AgentId a : members()) {
    if (!first) s += ',';
    s += std::to_string(a);
    first = false;
  }
  return s + "}";
}

Coalition Coalition::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '{') throw ParseError("expected '{' in coalition", i);
  ++i;
  Coalition c;
  skip();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    for (;;) {
      skip();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected agent number in coalition", start);
      if (i - start > 3) throw ParseError("agent number too large", start);
      int a = std::stoi(text.substr(start, i - start));
      if (a < 1 || a > kMaxAgents) throw ParseError("agent number out of range", start);
      c.mask_ |= std::uint64_t{1} << (a - 1);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or '}' in coalition", i);
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing characters after coalition", i);
  return c;
}

}  // namespace amc
