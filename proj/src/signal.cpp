#include "liesys/signal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "liesys/errors.hpp"

namespace liesys {

struct Signal::Spline {
  std::vector<double> t, y, m;  // knots, values, first derivatives at knots

  double eval(double x) const {
    const double lo = t.front(), hi = t.back();
    const double slack = 1e-9 * std::max(1.0, hi - lo);
    if (x < lo - slack || x > hi + slack)
      throw Error("sampled control evaluated outside its support at t=" + std::to_string(x));
    x = std::clamp(x, lo, hi);
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(t.begin(), it));
    i = std::clamp<std::size_t>(i, 1, t.size() - 1) - 1;
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
  }
};

Signal::Signal() : kind_(Kind::Constant), params_{0.0} {}

Signal Signal::constant(double value) {
  Signal s;
  s.params_ = {value};
  return s;
}

Signal Signal::sine(double amplitude, double omega, double phase, double offset) {
  Signal s;
  s.kind_ = Kind::Sine;
  s.params_ = {amplitude, omega, phase, offset};
  return s;
}

Signal Signal::cosine(double amplitude, double omega, double phase, double offset) {
  Signal s;
  s.kind_ = Kind::Cosine;
  s.params_ = {amplitude, omega, phase, offset};
  return s;
}

Signal Signal::ramp(double offset, double slope) { return polynomial({offset, slope}); }

Signal Signal::polynomial(std::vector<double> coeffs) {
  Signal s;
  s.kind_ = Kind::Polynomial;
  s.params_ = std::move(coeffs);
  if (s.params_.empty()) s.params_ = {0.0};
  return s;
}

Signal Signal::sampled(std::vector<double> t, std::vector<double> y) {
  const std::size_t n = t.size();
  if (n < 2 || y.size() != n) throw Error("sampled control needs >= 2 (t, y) pairs");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1])) throw Error("sampled control: knots must be strictly increasing");

  // Clamped spline: solve for knot slopes m_i with C2 continuity, end slopes fixed.
  std::vector<double> m(n, 0.0);
  auto one_sided = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (n == 2) return (y[1] - y[0]) / (t[1] - t[0]);
    // derivative at t[a] of the quadratic through a, b, c
    const double ha = t[b] - t[a], hb = t[c] - t[a];
    const double d1 = (y[b] - y[a]) / ha, d2 = (y[c] - y[a]) / hb;
    return (d1 * hb - d2 * ha) / (hb - ha);
  };
  m.front() = one_sided(0, 1, n > 2 ? 2 : 1);
  m.back() = n > 2 ? one_sided(n - 1, n - 2, n - 3) : m.front();

  if (n > 2) {
    // Tridiagonal system for interior slopes (Thomas algorithm).
    const std::size_t k = n - 2;
    std::vector<double> a(k), b(k), c(k), d(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = j + 1;
      const double hl = t[i] - t[i - 1], hr = t[i + 1] - t[i];
      a[j] = 1.0 / hl;
      b[j] = 2.0 / hl + 2.0 / hr;
      c[j] = 1.0 / hr;
      d[j] = 3.0 * ((y[i] - y[i - 1]) / (hl * hl) + (y[i + 1] - y[i]) / (hr * hr));
    }
    d[0] -= a[0] * m.front();
    d[k - 1] -= c[k - 1] * m.back();
    for (std::size_t j = 1; j < k; ++j) {
      const double w = a[j] / b[j - 1];
      b[j] -= w * c[j - 1];
      d[j] -= w * d[j - 1];
    }
    m[k] = d[k - 1] / b[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) m[j + 1] = (d[j] - c[j] * m[j + 2]) / b[j];
  }

  Signal s;
  s.kind_ = Kind::Sampled;
  s.spline_ = std::make_shared<const Spline>(Spline{std::move(t), std::move(y), std::move(m)});
  return s;
}

Signal Signal::custom(std::function<double(double)> f, std::string label) {
  Signal s;
  s.kind_ = Kind::Custom;
  s.custom_ = std::move(f);
  s.label_ = std::move(label);
  return s;
}

double Signal::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return params_[0];
    case Kind::Sine:
      return params_[3] + params_[0] * std::sin(params_[1] * t + params_[2]);
    case Kind::Cosine:
      return params_[3] + params_[0] * std::cos(params_[1] * t + params_[2]);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    case Kind::Sampled:
      return spline_->eval(t);
    case Kind::Custom:
      return custom_(t);
  }
  return 0.0;
}

std::string Signal::describe() const {
  std::ostringstream os;
  os << std::setprecision(17);
  switch (kind_) {
    case Kind::Constant:
      os << "const " << params_[0];
      break;
    case Kind::Sine:
    case Kind::Cosine:
      os << (kind_ == Kind::Sine ? "sin" : "cos") << " amp=" << params_[0]
         << " omega=" << params_[1] << " phase=" << params_[2] << " offset=" << params_[3];
      break;
    case Kind::Polynomial:
      os << "poly";
      for (double c : params_) os << ' ' << c;
      break;
    case Kind::Sampled:
      os << "samples";
      for (std::size_t i = 0; i < spline_->t.size(); ++i)
        os << ' ' << spline_->t[i] << ':' << spline_->y[i];
      break;
    case Kind::Custom:
      os << label_;
      break;
  }
  return os.str();
}

namespace {

double to_number(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(context + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

Signal Signal::parse(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  if (!(is >> kind)) throw Error("empty control specification");
  std::vector<std::string> args;
  for (std::string tok; is >> tok;) args.push_back(tok);

  if (kind == "const") {
    if (args.size() != 1) throw Error("const: expected one value");
    return constant(to_number(args[0], "const"));
  }
  if (kind == "poly") {
    std::vector<double> c;
    for (const auto& a : args) c.push_back(to_number(a, "poly"));
    if (c.empty()) throw Error("poly: expected coefficients");
    return polynomial(c);
  }
  if (kind == "samples") {
    std::vector<double> t, y;
    for (const auto& a : args) {
      auto colon = a.find(':');
      if (colon == std::string::npos) throw Error("samples: expected t:y, got '" + a + "'");
      t.push_back(to_number(a.substr(0, colon), "samples"));
      y.push_back(to_number(a.substr(colon + 1), "samples"));
    }
    return sampled(t, y);
  }

  std::map<std::string, double> kw;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw Error(kind + ": expected key=value, got '" + a + "'");
    kw[a.substr(0, eq)] = to_number(a.substr(eq + 1), kind);
  }
  auto get = [&](const char* key, double fallback) {
    auto it = kw.find(key);
    return it == kw.end() ? fallback : it->second;
  };
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kw) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw Error(kind + ": unknown parameter '" + k + "'");
    }
  };

  if (kind == "sin" || kind == "cos") {
    check_keys({"amp", "omega", "phase", "offset"});
    const double amp = get("amp", 1.0), omega = get("omega", 1.0);
    const double phase = get("phase", 0.0), offset = get("offset", 0.0);
    return kind == "sin" ? sine(amp, omega, phase, offset) : cosine(amp, omega, phase, offset);
  }
  if (kind == "ramp") {
    check_keys({"offset", "slope"});
    return ramp(get("offset", 0.0), get("slope", 1.0));
  }
  throw Error("unknown control kind '" + kind + "' (const, sin, cos, ramp, poly, samples)");
}

ControlSignal ControlSignal::constant(const std::vector<double>& values) {
  std::vector<Signal> ch;
  for (double v : values) ch.push_back(Signal::constant(v));
  return ControlSignal(std::move(ch));
}

Vec ControlSignal::operator()(double t) const {
  Vec b(dim());
  for (int i = 0; i < dim(); ++i) b(i) = channels_[static_cast<std::size_t>(i)](t);
  return b;
}

std::vector<double> uniform_grid(double t_end, double step) {
  if (!(t_end > 0.0) || !(step > 0.0)) throw Error("uniform_grid: span and step must be positive");
  const auto n = static_cast<long>(std::floor(t_end / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) * step);
  if (t_end - grid.back() > 1e-9 * step)
    grid.push_back(t_end);
  else
    grid.back() = t_end;
  return grid;
}

}  // namespace liesys
