#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "internal.hpp"

namespace maxtrunc::lab {

namespace {

const json& field(const json& p, const std::string& name) {
  if (!p.contains(name)) throw ConfigError("missing parameter '" + name + "'");
  return p.at(name);
}

[[noreturn]] void bad(const std::string& name, const std::string& why) {
  throw ConfigError("parameter '" + name + "' " + why);
}

double as_number(const json& v, const std::string& name) {
  if (!v.is_number()) bad(name, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(name, "must be finite");
  return x;
}

}  // namespace

double number(const json& p, const std::string& name, double lo, double hi) {
  const double x = as_number(field(p, name), name);
  if (x < lo || x > hi) bad(name, "must lie in [" + num(lo) + ", " + num(hi) + "]");
  return x;
}

double positive(const json& p, const std::string& name) {
  const double x = as_number(field(p, name), name);
  if (!(x > 0.0)) bad(name, "must be positive");
  return x;
}

std::size_t count(const json& p, const std::string& name, std::size_t lo, std::size_t hi) {
  const json& v = field(p, name);
  if (!v.is_number_integer()) bad(name, "must be an integer");
  const long long x = v.get<long long>();
  if (x < 0 || static_cast<std::size_t>(x) < lo || static_cast<std::size_t>(x) > hi) {
    bad(name, "must lie in [" + num(lo) + ", " + num(hi) + "]");
  }
  return static_cast<std::size_t>(x);
}

long integer(const json& p, const std::string& name, long lo, long hi) {
  const json& v = field(p, name);
  if (!v.is_number_integer()) bad(name, "must be an integer");
  const long x = v.get<long>();
  if (x < lo || x > hi) bad(name, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

Exponent exponent(const json& p, const std::string& name) {
  const json& v = field(p, name);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return Exponent::infinity();
    bad(name, "must be a number >= 1 or \"inf\"");
  }
  const double x = as_number(v, name);
  if (x < 1.0) bad(name, "must be >= 1");
  return Exponent(x);
}

std::vector<double> numbers(const json& p, const std::string& name, std::size_t min_len) {
  const json& v = field(p, name);
  if (!v.is_array()) bad(name, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, name));
  if (out.size() < min_len) bad(name, "needs at least " + num(min_len) + " entries");
  return out;
}

std::vector<std::pair<double, double>> pairs(const json& p, const std::string& name, std::size_t min_len) {
  const json& v = field(p, name);
  if (!v.is_array()) bad(name, "must be an array of [a, b] pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) bad(name, "must be an array of [a, b] pairs");
    out.emplace_back(as_number(e[0], name), as_number(e[1], name));
  }
  if (out.size() < min_len) bad(name, "needs at least " + num(min_len) + " entries");
  return out;
}

bool flag(const json& p, const std::string& name) {
  const json& v = field(p, name);
  if (!v.is_boolean()) bad(name, "must be true or false");
  return v.get<bool>();
}

std::string choice(const json& p, const std::string& name, const std::vector<std::string>& allowed) {
  const json& v = field(p, name);
  if (!v.is_string()) bad(name, "must be a string");
  const auto s = v.get<std::string>();
  if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) bad(name, "has unknown value '" + s + "'");
  return s;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::size_t v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(Exponent p) { return p.is_infinite() ? "inf" : num(p.value()); }

json exponent_json(Exponent p) { return p.is_infinite() ? json("inf") : json(p.value()); }

std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool log_x, bool log_y) {
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double a = tx(s.x[i]), b = ty(s.y[i]);
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      x0 = std::min(x0, a), x1 = std::max(x1, a), y0 = std::min(y0, b), y1 = std::max(y1, b);
    }
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double a) { return kLeft + (a - x0) / (x1 - x0) * pw; };
  auto py = [&](double b) { return kTop + (1.0 - (b - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double a = x0 + (x1 - x0) * t / 4.0, b = y0 + (y1 - y0) * t / 4.0;
    o << "<text x=\"" << px(a) << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
      << (log_x ? "1e" : "") << num(std::round(a * 1000) / 1000) << "</text>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(b) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
      << (log_y ? "1e" : "") << num(std::round(b * 1000) / 1000) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
    << escape(x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
    << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double a = tx(s.x[i]), b = ty(s.y[i]);
      if (std::isfinite(a) && std::isfinite(b)) o << px(a) << ',' << py(b) << ' ';
    }
    o << "\"/>\n";
    o << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 16 + 14 * static_cast<double>(k) << "\" font-size=\"11\" fill=\""
      << color << "\">" << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string heatmap(const std::string& title, std::size_t nx, std::size_t ny,
                    const std::vector<double>& values, double x0, double x1, double y0, double y1) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : values) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!(hi > lo)) hi = lo + 1.0;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(nx), ch = ph / static_cast<double>(ny);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double t = (values[j * nx + i] - lo) / (hi - lo);
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      o << "<rect x=\"" << kLeft + cw * static_cast<double>(i) << "\" y=\""
        << kTop + ch * static_cast<double>(ny - 1 - j) << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  }
  o << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\" font-size=\"11\">" << num(x0) << "</text>\n";
  o << "<text x=\"" << kLeft + pw << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"end\" font-size=\"11\">"
    << num(x1) << "</text>\n";
  o << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\" font-size=\"11\">" << num(y0) << "</text>\n";
  o << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\" font-size=\"11\">" << num(y1) << "</text>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\" font-size=\"11\">range "
    << num(lo) << " .. " << num(hi) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace maxtrunc::lab
