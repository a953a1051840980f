#include "hftlab/function_spec.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <vector>

#include "hftlab/error.hpp"

namespace hftlab {
namespace {

[[noreturn]] void fail(std::string_view what, std::string_view text) {
  throw Error(ErrorKind::parse, std::string(what) + ": '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) fail("invalid number", text);
  return v;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) fail("invalid integer", text);
  return v;
}

std::map<std::string, std::string, std::less<>> parse_keys(std::string_view body,
                                                           std::initializer_list<std::string_view> keys) {
  std::map<std::string, std::string, std::less<>> out;
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t comma = body.find(',', pos);
    const std::string_view item = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos) fail("expected key=value", item);
    const std::string key(trim(item.substr(0, eq)));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail("unknown key", key);
    if (out.contains(key)) fail("duplicate key", key);
    out.emplace(key, std::string(trim(item.substr(eq + 1))));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (const auto k : keys) {
    if (!out.contains(k)) fail("missing key", k);
  }
  return out;
}

Atom parse_atom(std::string_view text) {
  text = trim(text);
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) fail("unknown function", text);
  const std::string_view family = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  Atom atom;
  if (family == "chi") {
    atom = Chi{parse_real(parse_keys(body, {"alpha"}).at("alpha"))};
  } else if (family == "phi") {
    atom = Phi{parse_real(parse_keys(body, {"alpha"}).at("alpha"))};
  } else if (family == "psi") {
    atom = PsiP{parse_real(parse_keys(body, {"p"}).at("p"))};
  } else if (family == "x") {
    const auto kv = parse_keys(body, {"alpha", "M"});
    atom = XAlphaM{parse_real(kv.at("alpha")), parse_int(kv.at("M"))};
  } else if (family == "polyexp") {
    const auto kv = parse_keys(body, {"nu", "sigma"});
    atom = PolyExp{parse_int(kv.at("nu")), parse_complex(kv.at("sigma"))};
  } else {
    fail("unknown function", text);
  }
  validate(atom);
  return atom;
}

std::string format_atom(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Chi>) return "chi:alpha=" + format_double(a.alpha);
        if constexpr (std::is_same_v<T, Phi>) return "phi:alpha=" + format_double(a.alpha);
        if constexpr (std::is_same_v<T, PsiP>) return "psi:p=" + format_double(a.p);
        if constexpr (std::is_same_v<T, XAlphaM>)
          return "x:alpha=" + format_double(a.alpha) + ",M=" + std::to_string(a.M);
        if constexpr (std::is_same_v<T, PolyExp>)
          return "polyexp:nu=" + std::to_string(a.nu) + ",sigma=" + format_complex(a.sigma);
      },
      atom);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_complex(cplx z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

cplx parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) fail("invalid complex number", text);
  if (text.back() != 'i') return {parse_real(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not part of an exponent.
  size_t split = std::string_view::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

HalfLineFunction parse_function(std::string_view text) {
  text = trim(text);
  constexpr std::string_view sum_prefix = "sum:";
  if (!text.starts_with(sum_prefix)) return HalfLineFunction(parse_atom(text));

  std::string_view rest = trim(text.substr(sum_prefix.size()));
  Combination c;
  while (!rest.empty()) {
    if (rest.front() != '(') fail("expected '(' before coefficient", rest);
    const size_t close = rest.find(")*");
    if (close == std::string_view::npos) fail("expected ')*' after coefficient", rest);
    const cplx coeff = parse_complex(rest.substr(1, close - 1));
    rest.remove_prefix(close + 2);
    const size_t next = rest.find("+(");
    c.terms.push_back({coeff, parse_atom(rest.substr(0, next))});
    if (next == std::string_view::npos) break;
    rest.remove_prefix(next + 1);
  }
  return HalfLineFunction(std::move(c));
}

std::string format_function(const HalfLineFunction& f) {
  if (!f.is_combination()) return format_atom(f.terms().front().atom);
  std::string out = "sum:";
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) out += "+";
    out += "(" + format_complex(t.coeff) + ")*" + format_atom(t.atom);
    first = false;
  }
  return out;
}

}  // namespace hftlab
