#include <cctype>
#include <map>

#include "amc/error.hpp"
#include "amc/game.hpp"

namespace amc {

std::string exportPgsolver(const ParityGame& game) {
  std::string out = "parity " + std::to_string(game.size() == 0 ? 0 : game.size() - 1) + ";\n";
  for (PositionId v = 0; v < game.size(); ++v) {
    const GamePosition& p = game.at(v);
    Player owner = p.owner;
    int priority = p.priority;
    std::string succ;
    if (p.successors.empty()) {
      // The owner is stuck and loses: a self-loop of the owner's losing parity.
      priority = owner == Player::Exists ? 1 : 0;
      succ = std::to_string(v);
    } else {
      for (std::size_t i = 0; i < p.successors.size(); ++i)
        succ += (i ? "," : "") + std::to_string(p.successors[i]);
    }
    out += std::to_string(v) + " " + std::to_string(priority) + " " + (owner == Player::Exists ? "0" : "1") + " " +
           succ;
    const std::string& label = game.label(v);
    if (!label.empty()) {
      out += " \"";
      for (char c : label) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
    out += ";\n";
  }
  return out;
}

namespace {

class PgReader {
 public:
  explicit PgReader(std::string_view s) : s_(s) {}

  ParityGame read() {
    skip();
    if (word("parity")) {
      number();
      expect(';');
    }
    skip();
    if (word("start")) {
      number();
      expect(';');
    }
    struct Entry {
      int priority;
      int owner;
      std::vector<PositionId> succ;
      std::string label;
    };
    std::map<long, Entry> entries;
    for (skip(); i_ < s_.size(); skip()) {
      std::size_t at = i_;
      long id = number();
      Entry e;
      e.priority = static_cast<int>(number());
      e.owner = static_cast<int>(number());
      if (e.owner != 0 && e.owner != 1) throw ParseError("pgsolver: owner must be 0 or 1", at);
      for (;;) {
        e.succ.push_back(static_cast<PositionId>(number()));
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        break;
      }
      skip();
      if (i_ < s_.size() && s_[i_] == '"') e.label = quoted();
      expect(';');
      if (!entries.emplace(id, std::move(e)).second)
        throw ParseError("pgsolver: duplicate position " + std::to_string(id), at);
    }

    ParityGame g;
    long expected = 0;
    for (auto& [id, e] : entries) {
      if (id != expected) throw ParseError("pgsolver: position ids must be 0..n-1 without gaps");
      ++expected;
      g.add(e.owner == 0 ? Player::Exists : Player::Forall, e.priority, e.label);
    }
    for (auto& [id, e] : entries) {
      for (PositionId t : e.succ) {
        if (t >= g.size()) throw ParseError("pgsolver: successor " + std::to_string(t) + " of " + std::to_string(id) + " is not a position");
        g.addEdge(static_cast<PositionId>(id), t);
      }
    }
    return g;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool word(std::string_view w) {
    if (s_.substr(i_, w.size()) != w) return false;
    i_ += w.size();
    return true;
  }

  long number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_ || i_ - start > 9) throw ParseError("pgsolver: expected number", start);
    return std::stol(std::string(s_.substr(start, i_ - start)));
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) throw ParseError(std::string("pgsolver: expected '") + c + "'", i_);
    ++i_;
  }

  std::string quoted() {
    std::size_t start = i_++;
    std::string out;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
      out += s_[i_++];
    }
    if (i_ >= s_.size()) throw ParseError("pgsolver: unterminated label", start);
    ++i_;
    return out;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

ParityGame parsePgsolver(std::string_view text) { return PgReader(text).read(); }

}  // namespace amc
