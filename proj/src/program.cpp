#include "cohlab/vm/program.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cohlab/errors.hpp"

namespace cohlab::vm {

namespace {

struct Token {
  std::string text;
};

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::optional<u64> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  u64 v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    u64 d = static_cast<u64>(c - '0');
    if (v > (~u64{0} - d) / 10) return std::nullopt;
    v = v * 10 + d;
  }
  return v;
}

// Register operand: r0..r7, or "flag" when allow_flag.
u8 parse_reg(const std::string& raw, bool allow_flag, int line) {
  std::string s = upper(raw);
  if (s == "FLAG") {
    if (!allow_flag) throw ParseError(line, "flag is not writable: '" + raw + "'");
    return kFlagOperand;
  }
  if (s.size() >= 2 && s[0] == 'R') {
    auto n = parse_number(s.substr(1));
    if (n && *n < kRegisterCount) return static_cast<u8>(*n);
    if (n) throw ParseError(line, "register out of range: '" + raw + "'");
  }
  throw ParseError(line, "expected a register, got '" + raw + "'");
}

struct PendingTarget {
  size_t instr;   // instruction whose b field needs patching
  std::string label;
  int line;
};

}  // namespace

Program parse_program(std::string_view text) {
  Program p;
  std::map<std::string, u64> labels;
  std::vector<PendingTarget> pending;
  bool saw_arity = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    // Peel any leading "label:" definitions.
    for (;;) {
      auto colon = line.find(':');
      if (colon == std::string::npos) break;
      std::string head = trim(line.substr(0, colon));
      if (!is_ident(head)) throw ParseError(line_no, "bad label '" + head + "'");
      if (labels.count(head)) throw ParseError(line_no, "duplicate label '" + head + "'");
      labels[head] = p.instructions.size();
      line = trim(line.substr(colon + 1));
    }
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string mnemonic;
    ls >> mnemonic;
    std::string rest = trim(line.substr(mnemonic.size()));
    mnemonic = upper(mnemonic);

    std::vector<std::string> ops;
    if (!rest.empty()) {
      size_t pos = 0;
      while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string piece = comma == std::string::npos ? rest.substr(pos)
                                                       : rest.substr(pos, comma - pos);
        piece = trim(piece);
        if (piece.empty()) throw ParseError(line_no, "empty operand");
        ops.push_back(piece);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }

    auto want = [&](size_t n) {
      if (ops.size() != n)
        throw ParseError(line_no, mnemonic + " expects " + std::to_string(n) +
                                      " operand(s), got " + std::to_string(ops.size()));
    };
    auto target_of = [&](const std::string& s) -> u64 {
      if (auto n = parse_number(s)) return *n;  // numeric targets allowed
      if (!is_ident(s)) throw ParseError(line_no, "bad jump target '" + s + "'");
      pending.push_back({p.instructions.size(), s, line_no});
      return 0;
    };

    if (mnemonic == "ARITY") {
      if (saw_arity) throw ParseError(line_no, "duplicate ARITY directive");
      if (!p.instructions.empty())
        throw ParseError(line_no, "ARITY must precede the first instruction");
      want(1);
      auto n = parse_number(ops[0]);
      if (!n || *n > kRegisterCount)
        throw ParseError(line_no, "arity must be a number <= 8");
      p.arity = static_cast<u32>(*n);
      saw_arity = true;
      continue;
    }

    Instruction ins;
    if (mnemonic == "INC" || mnemonic == "DEC") {
      want(1);
      ins.op = mnemonic == "INC" ? Opcode::Inc : Opcode::Dec;
      ins.a = parse_reg(ops[0], /*allow_flag=*/false, line_no);
    } else if (mnemonic == "JZ") {
      want(2);
      ins.op = Opcode::Jz;
      ins.a = parse_reg(ops[0], /*allow_flag=*/true, line_no);
      ins.b = target_of(ops[1]);
    } else if (mnemonic == "JMP") {
      want(1);
      ins.op = Opcode::Jmp;
      ins.b = target_of(ops[0]);
    } else if (mnemonic == "QUERY") {
      want(1);
      ins.op = Opcode::Query;
      ins.a = parse_reg(ops[0], /*allow_flag=*/true, line_no);
    } else if (mnemonic == "HALT") {
      want(1);
      ins.op = Opcode::Halt;
      std::string s = upper(ops[0]);
      if (s == "FLAG") {
        ins.a = static_cast<u8>(HaltSrc::Flag);
      } else if (!s.empty() && s[0] == 'R' && parse_number(s.substr(1))) {
        ins.a = static_cast<u8>(HaltSrc::Reg);
        ins.b = parse_reg(ops[0], false, line_no);
      } else if (auto n = parse_number(ops[0])) {
        ins.a = static_cast<u8>(HaltSrc::Imm);
        ins.b = *n;
      } else {
        throw ParseError(line_no, "bad HALT operand '" + ops[0] + "'");
      }
    } else {
      throw ParseError(line_no, "unknown opcode '" + mnemonic + "'");
    }
    p.instructions.push_back(ins);
  }

  for (const auto& pt : pending) {
    auto it = labels.find(pt.label);
    if (it == labels.end())
      throw ParseError(pt.line, "undefined label '" + pt.label + "'");
    p.instructions[pt.instr].b = it->second;
  }
  // Labels may point one past the end; jumping there is a stuck configuration,
  // but parsed targets must at least be within [0, size].
  for (size_t i = 0; i < p.instructions.size(); ++i) {
    const auto& ins = p.instructions[i];
    if ((ins.op == Opcode::Jz || ins.op == Opcode::Jmp) && ins.b > p.instructions.size())
      throw ParseError(0, "jump target out of range in instruction " + std::to_string(i));
  }
  if (p.instructions.empty()) throw ParseError(line_no, "program has no instructions");
  return p;
}

std::string pretty_print(const Program& p) {
  std::set<u64> targets;
  for (const auto& ins : p.instructions)
    if (ins.op == Opcode::Jz || ins.op == Opcode::Jmp) targets.insert(ins.b);

  auto reg_name = [](u8 a) -> std::string {
    return a == kFlagOperand ? "flag" : "r" + std::to_string(a);
  };

  std::string out = "ARITY " + std::to_string(p.arity) + "\n";
  for (size_t i = 0; i < p.instructions.size(); ++i) {
    const auto& ins = p.instructions[i];
    std::string line;
    if (targets.count(i)) line += "L" + std::to_string(i) + ": ";
    switch (ins.op) {
      case Opcode::Inc: line += "INC " + reg_name(ins.a); break;
      case Opcode::Dec: line += "DEC " + reg_name(ins.a); break;
      case Opcode::Jz:
        line += "JZ " + reg_name(ins.a) + ", L" + std::to_string(ins.b);
        break;
      case Opcode::Jmp: line += "JMP L" + std::to_string(ins.b); break;
      case Opcode::Query: line += "QUERY " + reg_name(ins.a); break;
      case Opcode::Halt:
        switch (static_cast<HaltSrc>(ins.a)) {
          case HaltSrc::Imm: line += "HALT " + std::to_string(ins.b); break;
          case HaltSrc::Reg: line += "HALT r" + std::to_string(ins.b); break;
          case HaltSrc::Flag: line += "HALT flag"; break;
        }
        break;
    }
    out += line + "\n";
  }
  // A jump may target one past the end; give that point a label line.
  if (targets.count(p.instructions.size()))
    out += "L" + std::to_string(p.instructions.size()) + ":\n";
  return out;
}

Program canonical_diverger() {
  Program p;
  p.arity = 0;
  p.instructions.push_back(Instruction{Opcode::Jmp, 0, 0});
  return p;
}

}  // namespace cohlab::vm
