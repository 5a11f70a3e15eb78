#include "nadiv/cli/dsl.hpp"

#include "nadiv/cli/io.hpp"
#include "nadiv/constructions.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <map>

namespace nadiv::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  DslNode parse() {
    DslNode n = expr();
    skip();
    if (i_ != s_.size()) throw DslError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool number_start() const {
    if (i_ >= s_.size()) return false;
    const char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  DslNode arg() {
    skip();
    if (!number_start()) return expr();
    DslNode n;
    n.kind = DslNode::Kind::number;
    n.position = i_;
    std::size_t start = i_;
    if (s_[i_] == '+') ++start, ++i_;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + s_.size(), n.number);
    if (ec != std::errc()) throw DslError("malformed number", n.position);
    i_ = static_cast<std::size_t>(ptr - s_.data());
    return n;
  }

  DslNode expr() {
    skip();
    DslNode n;
    n.position = i_;
    if (i_ < s_.size() && s_[i_] == '@') {
      n.kind = DslNode::Kind::file;
      ++i_;
      const std::size_t start = i_;
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ')') ++i_;
      n.name = std::string(s_.substr(start, i_ - start));
      while (!n.name.empty() && std::isspace(static_cast<unsigned char>(n.name.back()))) n.name.pop_back();
      if (n.name.empty()) throw DslError("empty file reference", n.position);
      return n;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (i_ == start) throw DslError(i_ < s_.size() ? "expected a name" : "unexpected end of expression", i_);
    n.name = std::string(s_.substr(start, i_ - start));
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      while (true) {
        n.args.push_back(arg());
        skip();
        if (i_ >= s_.size()) throw DslError("missing ')'", i_);
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        if (s_[i_] != ',') throw DslError("expected ',' or ')'", i_);
        ++i_;
      }
    }
    return n;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

struct Signature {
  int algebras;  // leading algebra arguments
  int numbers;   // following numeric arguments
  int files;     // trailing @file arguments
};

const std::map<std::string, Signature>& signatures() {
  static const std::map<std::string, Signature> sig = {
      {"R", {0, 0, 0}},       {"C", {0, 0, 0}},       {"Cstar", {0, 0, 0}},   {"H", {0, 0, 0}},
      {"O", {0, 0, 0}},       {"Hplus", {0, 0, 0}},   {"mut", {1, 1, 0}},     {"plus", {1, 0, 0}},
      {"cd", {1, 1, 0}},      {"gcd", {1, 5, 0}},     {"isotope", {1, 0, 1}}, {"quad", {0, 0, 1}},
      {"jform", {0, 0, 1}},   {"osborn4", {0, 3, 0}}, {"table1", {0, 16, 0}}, {"table4", {0, 4, 0}},
      {"table5", {0, 7, 0}},  {"table7", {0, 5, 0}},
  };
  return sig;
}

void check_shape(const DslNode& n) {
  if (n.kind == DslNode::Kind::file) return;
  if (n.kind == DslNode::Kind::number) throw DslError("expected an algebra, found a number", n.position);
  auto it = signatures().find(n.name);
  if (it == signatures().end()) throw DslError("unknown name '" + n.name + "'", n.position);
  const Signature& s = it->second;
  const int want = s.algebras + s.numbers + s.files;
  if (static_cast<int>(n.args.size()) != want)
    throw DslError(n.name + " expects " + std::to_string(want) + " argument(s), got " + std::to_string(n.args.size()),
                   n.position);
  for (int k = 0; k < want; ++k) {
    const DslNode& a = n.args[static_cast<std::size_t>(k)];
    if (k < s.algebras) {
      check_shape(a);
    } else if (k < s.algebras + s.numbers) {
      if (a.kind != DslNode::Kind::number) throw DslError("expected a number", a.position);
    } else if (a.kind != DslNode::Kind::file) {
      throw DslError("expected an @file reference", a.position);
    }
  }
}

double num(const DslNode& n, std::size_t k) { return n.args[k].number; }

Algebra build(const DslNode& n) {
  if (n.kind == DslNode::Kind::file) return read_algebra_file(n.name);
  const std::string& f = n.name;
  if (signatures().at(f).algebras == 0 && signatures().at(f).numbers == 0 && signatures().at(f).files == 0)
    return canonical(f);
  if (f == "mut") return mutation(build(n.args[0]), num(n, 1));
  if (f == "plus") return symmetrization(build(n.args[0]));
  if (f == "cd") return cayley_dickson(build(n.args[0]), num(n, 1));
  if (f == "gcd") {
    GcdParams p{num(n, 1), num(n, 2), num(n, 3), num(n, 4), num(n, 5)};
    return gcd_extension(build(n.args[0]), p);
  }
  if (f == "isotope") return vector_isotope(build(n.args[0]), read_matrix_file(n.args[1].name));
  if (f == "quad") return build_quadratic(read_quadratic_file(n.args[0].name));
  if (f == "jform") return jform(read_matrix_file(n.args[0].name));
  if (f == "osborn4") return osborn4(num(n, 0), num(n, 1), num(n, 2));
  if (f == "table1") {
    std::array<double, 16> v{};
    for (std::size_t k = 0; k < 16; ++k) v[k] = num(n, k);
    return table1(Table1Params::from_array(v));
  }
  if (f == "table4") return table4(num(n, 0), num(n, 1), num(n, 2), num(n, 3));
  if (f == "table5") return table5(num(n, 0), num(n, 1), num(n, 2), num(n, 3), num(n, 4), num(n, 5), num(n, 6));
  if (f == "table7") return table7(num(n, 0), num(n, 1), num(n, 2), num(n, 3), num(n, 4));
  throw DslError("unknown name '" + f + "'", n.position);
}

}  // namespace

DslNode parse_dsl(std::string_view text) {
  DslNode n = Parser(text).parse();
  check_shape(n);
  return n;
}

std::string dsl_text(const DslNode& node) {
  switch (node.kind) {
    case DslNode::Kind::number: return format_number(node.number);
    case DslNode::Kind::file: return "@" + node.name;
    case DslNode::Kind::call: break;
  }
  std::string out = node.name;
  if (node.args.empty()) return out;
  out += "(";
  for (std::size_t k = 0; k < node.args.size(); ++k) out += (k ? "," : "") + dsl_text(node.args[k]);
  return out + ")";
}

Algebra evaluate_dsl(const DslNode& node) {
  // A bare file reference keeps the provenance stored in the file.
  if (node.kind == DslNode::Kind::file) return build(node);
  return build(node).with_provenance(dsl_text(node));
}

Algebra build_from_dsl(std::string_view text) { return evaluate_dsl(parse_dsl(text)); }

}  // namespace nadiv::cli
