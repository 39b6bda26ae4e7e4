#include "mdgm/samplers.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace mdgm {

namespace {

double rate(std::size_t accepted, std::size_t proposed) {
  return proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
}

}  // namespace

void write_samples_jsonl(std::ostream& out, const PosteriorSamples& samples) {
  for (const auto& r : samples.records) {
    nlohmann::ordered_json j;
    j["iter"] = r.iter;
    j["beta"] = r.beta;
    j["eta0"] = r.eta0;
    j["eta1"] = r.eta1;
    j["T"] = r.T;
    j["z"] = r.z.to_bits();
    if (samples.model == ModelKind::MdgmST) {
      auto edges = nlohmann::json::array();
      for (auto [c, p] : r.tree_edges) edges.push_back({c, p});
      j["tree_edges"] = std::move(edges);
    }
    out << j.dump() << '\n';
  }
  const auto& a = samples.acceptance;
  nlohmann::ordered_json s;
  s["model"] = to_string(samples.model);
  s["records"] = samples.records.size();
  s["dag_proposed"] = a.dag_proposed;
  s["dag_accepted"] = a.dag_accepted;
  s["dag_acceptance_rate"] = rate(a.dag_accepted, a.dag_proposed);
  s["beta_proposed"] = a.beta_proposed;
  s["beta_accepted"] = a.beta_accepted;
  s["beta_acceptance_rate"] = rate(a.beta_accepted, a.beta_proposed);
  s["eta_stalls"] = a.eta_stalls;
  nlohmann::ordered_json wrapper;
  wrapper["summary"] = std::move(s);
  out << wrapper.dump() << '\n';
}

PosteriorSamples read_samples_jsonl(std::istream& in) {
  PosteriorSamples out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) {
      const auto& s = j["summary"];
      out.model = model_from_string(s.at("model").get<std::string>());
      out.acceptance.dag_proposed = s.at("dag_proposed");
      out.acceptance.dag_accepted = s.at("dag_accepted");
      out.acceptance.beta_proposed = s.at("beta_proposed");
      out.acceptance.beta_accepted = s.at("beta_accepted");
      out.acceptance.eta_stalls = s.at("eta_stalls");
      continue;
    }
    SampleRecord r;
    r.iter = j.at("iter");
    r.beta = j.at("beta");
    r.eta0 = j.at("eta0");
    r.eta1 = j.at("eta1");
    r.T = j.at("T");
    r.z = LatentField::from_bits(j.at("z").get<std::string>());
    if (j.contains("tree_edges")) {
      for (const auto& e : j["tree_edges"]) r.tree_edges.emplace_back(e.at(0), e.at(1));
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace mdgm
