#include "mdgm/experiments.hpp"

#include <random>
#include <sstream>

namespace mdgm {

ObsScheme ObsScheme::parse(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("observation scheme '" + s + "' must be fixed:<m> or poisson:<l>");
  }
  ObsScheme o;
  const std::string kind = s.substr(0, colon);
  if (kind == "fixed") o.kind = Kind::FixedM;
  else if (kind == "poisson") o.kind = Kind::Poisson;
  else throw std::invalid_argument("unknown observation scheme '" + kind + "'");
  std::size_t used = 0;
  try {
    o.value = std::stod(s.substr(colon + 1), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() - colon - 1) {
    throw std::invalid_argument("observation scheme '" + s + "' has a malformed value");
  }
  o.validate();
  return o;
}

std::string ObsScheme::to_string() const {
  std::ostringstream os;
  os << (kind == Kind::FixedM ? "fixed:" : "poisson:") << value;
  return os.str();
}

void ObsScheme::validate() const {
  if (kind == Kind::FixedM) {
    if (value < 1 || value != static_cast<double>(static_cast<std::size_t>(value))) {
      throw std::invalid_argument("fixed observation count must be a positive integer");
    }
  } else if (!(value > 0)) {
    throw std::invalid_argument("Poisson rate must be positive");
  }
}

void SimConfig::validate() const {
  if (lattice.rows < 1 || lattice.cols < 1) throw std::invalid_argument("empty lattice");
  if (!(eta >= 0.0 && eta < 0.5)) throw std::invalid_argument("eta must lie in [0, 0.5)");
  if (!(beta_true >= 0.0)) throw std::invalid_argument("beta_true must be non-negative");
  if (replications < 1) throw std::invalid_argument("at least one replication is required");
  if (models.empty()) throw std::invalid_argument("no models to compare");
  obs.validate();
  mcmc.validate();
}

std::vector<std::size_t> draw_counts(std::size_t units, const ObsScheme& obs, Rng& rng) {
  std::vector<std::size_t> m(units);
  if (obs.kind == ObsScheme::Kind::FixedM) {
    std::fill(m.begin(), m.end(), static_cast<std::size_t>(obs.value));
  } else {
    std::poisson_distribution<std::size_t> pois(obs.value);
    for (auto& x : m) x = pois(rng);
  }
  return m;
}

Dataset generate_dataset(const Nug& nug, double beta_true, double eta, const ObsScheme& obs,
                         Rng& rng, std::size_t cftp_cap) {
  if (!(eta >= 0.0 && eta < 0.5)) throw std::invalid_argument("eta must lie in [0, 0.5)");
  Dataset d;
  d.z_true = cftp_ising(nug, beta_true, rng, cftp_cap);
  const auto counts = draw_counts(nug.size(), obs, rng);
  d.y = Observations(nug.size());
  for (Vertex i = 0; i < nug.size(); ++i) {
    const double p = d.z_true[i] ? 1.0 - eta : eta;
    for (std::size_t j = 0; j < counts[i]; ++j) d.y.add(i, rng.uniform() < p);
  }
  return d;
}

}  // namespace mdgm
