#include "torint/metric.hpp"

#include <algorithm>
#include <sstream>

namespace torint {

std::string describe(const MetricSpec& m) {
  if (m.mode == MetricMode::Canonical) return "canonical";
  std::ostringstream os;
  os << "smoothed:" << m.k;
  return os.str();
}

MetricSpec parse_metric(const std::string& text) {
  MetricSpec m;
  if (text == "canonical" || text.empty()) return m;
  const std::string prefix = "smoothed";
  if (text.rfind(prefix, 0) == 0) {
    m.mode = MetricMode::Smoothed;
    if (text.size() > prefix.size()) {
      if (text[prefix.size()] != ':') throw InputError("metric", "expected 'smoothed:<k>'");
      try {
        m.k = std::stod(text.substr(prefix.size() + 1));
      } catch (const std::exception&) {
        throw InputError("metric", "invalid smoothing parameter");
      }
    }
    if (!(m.k > 0)) throw InputError("metric", "smoothing parameter must be positive");
    return m;
  }
  throw InputError("metric", "unknown metric '" + text + "'");
}

namespace {

std::vector<std::vector<RatVector>> linear_pieces(const FanCharts& charts) {
  const Fan& fan = charts.fan();
  std::vector<std::vector<RatVector>> pieces(fan.num_rays());
  for (std::size_t a = 0; a < fan.num_rays(); ++a) {
    for (std::size_t s = 0; s < fan.maximal_cones().size(); ++s) {
      const auto& cone = fan.maximal_cones()[s];
      RatVector l(fan.dim(), Rational(0));
      auto it = std::find(cone.begin(), cone.end(), a);
      if (it != cone.end()) {
        std::size_t row = static_cast<std::size_t>(it - cone.begin());
        for (std::size_t j = 0; j < fan.dim(); ++j) l[j] = charts.inverse(s)(row, j);
      }
      pieces[a].push_back(l);
    }
  }
  return pieces;
}

}  // namespace

bool pl_is_convex(const Fan& fan, std::size_t alpha) {
  FanCharts charts(fan);
  auto pieces = linear_pieces(charts);
  for (const auto& l : pieces[alpha])
    for (std::size_t b = 0; b < fan.num_rays(); ++b)
      if (dot(l, fan.ray(b)) > Rational(b == alpha ? 1 : 0)) return false;
  return true;
}

ArchimedeanMetric::ArchimedeanMetric(const Fan& fan, MetricSpec spec) : spec_(spec), charts_(fan) {
  pieces_ = linear_pieces(charts_);
  for (const auto& per_ray : pieces_) {
    std::vector<std::vector<double>> d;
    for (const auto& l : per_ray) d.push_back(to_double(l));
    pieces_double_.push_back(std::move(d));
  }
  if (spec_.mode == MetricMode::Smoothed) {
    for (std::size_t a = 0; a < fan.num_rays(); ++a)
      if (!pl_is_convex(fan, a))
        throw InputError("metric", "smoothed metric requires convex boundary functions; φ for ray " +
                                       fan.labels()[a] + " is not convex");
  }
}

double ArchimedeanMetric::phi(std::size_t alpha, const std::vector<double>& u) const {
  if (spec_.mode == MetricMode::Canonical) return charts_.coordinates(u)[alpha];
  return smoothed_phi<double>(alpha, u);
}

std::vector<double> ArchimedeanMetric::phis(const std::vector<double>& u) const {
  if (spec_.mode == MetricMode::Canonical) return charts_.coordinates(u);
  std::vector<double> out(pieces_.size());
  for (std::size_t a = 0; a < pieces_.size(); ++a) out[a] = smoothed_phi<double>(a, u);
  return out;
}

double ArchimedeanMetric::phi_s(const std::vector<double>& s, const std::vector<double>& u) const {
  auto p = phis(u);
  double total = 0;
  for (std::size_t a = 0; a < p.size(); ++a) total += s[a] * p[a];
  return total;
}

}  // namespace torint
