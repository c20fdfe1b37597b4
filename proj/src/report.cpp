#include "hypk/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace hypk {

using nlohmann::ordered_json;

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json k_object(const KEstimate& k, const std::vector<std::string>& names) {
    ordered_json j;
    j["value"] = k.value;
    j["alpha"] = word_to_string(k.alpha, names);
    j["beta"] = word_to_string(k.beta, names);
    j["intersection"] = k.intersection;
    j["length_alpha"] = k.length_alpha;
    j["length_beta"] = k.length_beta;
    j["cutoff"] = k.cutoff;
    j["certified"] = k.certified;
    j["sys_h"] = k.sys_h;
    j["envelope"] = k.envelope;
    j["within_envelope"] = k.sys_h > 0 && k.value <= k.envelope;
    j["simple_classes"] = k.simple_classes;
    if (!k.certified) j["warning"] = "word ball does not certify the cutoff; value is a lower bound over a partial table";
    return j;
}

}  // namespace

std::string k_estimate_json(const KEstimate& k, const std::vector<std::string>& names) {
    return dump(k_object(k, names));
}

std::string k_estimate_csv(const KEstimate& k, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "value,alpha,beta,intersection,length_alpha,length_beta,cutoff,certified,sys_h,envelope\n"
       << format_real(k.value) << ',' << word_to_string(k.alpha, names) << ',' << word_to_string(k.beta, names)
       << ',' << k.intersection << ',' << format_real(k.length_alpha) << ',' << format_real(k.length_beta) << ','
       << format_real(k.cutoff) << ',' << (k.certified ? 1 : 0) << ',' << format_real(k.sys_h) << ','
       << format_real(k.envelope) << '\n';
    return os.str();
}

std::string prediction_json(const AsympPrediction& p, const std::vector<std::string>& names) {
    ordered_json j;
    j["threshold"] = p.threshold;
    j["predictor"] = p.predictor;
    j["argmax"] = p.argmax;
    j["gammas"] = ordered_json::array();
    for (const auto& d : p.gammas) {
        ordered_json g;
        g["gamma"] = word_to_string(d.gamma, names);
        g["gamma_length"] = d.gamma_length;
        g["alpha"] = word_to_string(d.alpha, names);
        g["alpha_length"] = d.alpha_length;
        g["value"] = d.value;
        j["gammas"].push_back(g);
    }
    return dump(j);
}

std::string witness_json(const SurgeryWitness& w, const std::vector<std::string>& names) {
    ordered_json j;
    j["alpha"] = word_to_string(w.alpha, names);
    j["alpha_length"] = w.alpha_length;
    j["regime"] = w.regime == SurgeryRegime::Direction ? "direction" : "crossing-once";
    j["gammas"] = ordered_json::array();
    for (const auto& g : w.gammas) j["gammas"].push_back(word_to_string(g, names));
    j["witness"] = ordered_json::array();
    for (std::size_t i = 0; i < w.witness.size(); ++i)
        j["witness"].push_back({{"word", word_to_string(w.witness[i], names)}, {"length", w.lengths[i]}});
    j["total_length"] = w.total_length;
    j["length_bound"] = w.length_bound;
    j["homology_ok"] = w.homology_ok;
    j["length_ok"] = w.length_ok;
    j["intersection_ok"] = w.intersection_ok;
    j["subsets_tried"] = w.subsets_tried;
    return dump(j);
}

std::string basis_json(const HomologyBasis& b, const std::vector<std::string>& names) {
    ordered_json j;
    j["determinant"] = b.determinant;
    j["sys_h"] = b.sys_h;
    j["curves"] = ordered_json::array();
    for (const auto& c : b.curves)
        j["curves"].push_back({{"word", word_to_string(c.word, names)},
                               {"length", c.length},
                               {"homology", c.homology},
                               {"bound", c.bound}});
    j["pair"] = {b.pair_i, b.pair_j};
    j["pair_value"] = b.pair_value;
    j["floor"] = b.floor;
    return dump(j);
}

std::string deformation_json(const DeformationReport& r, const std::vector<std::string>& names) {
    ordered_json j;
    j["short_edges"] = r.short_edges;
    j["sys_x"] = r.sys_x;
    j["sys_y"] = r.sys_y;
    j["sys_y_ok"] = r.sys_y_ok;
    j["max_disjoint_ratio"] = r.max_disjoint_ratio;
    j["max_crossing_ratio"] = r.max_crossing_ratio;
    j["R"] = r.R;
    j["certified"] = r.certified;
    j["rows"] = ordered_json::array();
    for (const auto& row : r.rows)
        j["rows"].push_back({{"id", row.id},
                             {"word", word_to_string(row.word, names)},
                             {"length_before", row.before},
                             {"length_after", row.after},
                             {"regime", row.crossing_short ? "crossing-short" : "disjoint"},
                             {"ratio", row.ratio}});
    return dump(j);
}

std::string table_csv(const CurveTable& t, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "word,length,homology,simple,crossings\n";
    auto list = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    for (const auto& e : t.entries)
        os << word_to_string(e.word, names) << ',' << format_real(e.length) << ',' << list(e.homology) << ','
           << (e.simple ? 1 : 0) << ',' << list(e.crossings) << '\n';
    return os.str();
}

std::string table_json(const CurveTable& t, const std::vector<std::string>& names) {
    ordered_json j;
    j["cutoff"] = t.cutoff;
    j["max_word_length"] = t.max_word_length;
    j["word_budget"] = t.word_budget;
    j["certified"] = t.certified;
    j["entries"] = ordered_json::array();
    for (const auto& e : t.entries)
        j["entries"].push_back({{"word", word_to_string(e.word, names)},
                                {"length", e.length},
                                {"homology", e.homology},
                                {"simple", e.simple},
                                {"crossings", e.crossings}});
    if (!t.certified) j["warning"] = "word ball does not certify the cutoff";
    return dump(j);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "n,delta,sys,sys_h,khat,predictor,normalized_product,normalized_khat,cutoff,certified\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_real(r.delta) << ',' << format_real(r.sys) << ',' << format_real(r.sys_h) << ','
           << format_real(r.khat) << ',' << format_real(r.predictor) << ',' << format_real(r.normalized_product)
           << ',' << format_real(r.normalized_khat) << ',' << format_real(r.cutoff) << ',' << (r.certified ? 1 : 0)
           << '\n';
    return os.str();
}

std::string twist_orbit_csv(const TwistOrbit& o) {
    std::ostringstream os;
    os << "n,length,argmin\n";
    for (std::size_t i = 0; i < o.n.size(); ++i)
        os << o.n[i] << ',' << format_real(o.length[i]) << ',' << (o.n[i] == o.argmin ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace hypk
