#include "hypk/surface_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypk/errors.hpp"

namespace hypk {

bool SurfaceData::operator==(const SurfaceData& o) const {
    if (label != o.label || graph.genus != o.graph.genus || graph.edges.size() != o.graph.edges.size()) return false;
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        if (!(graph.edges[e].a == o.graph.edges[e].a) || !(graph.edges[e].b == o.graph.edges[e].b)) return false;
    return coords.lengths == o.coords.lengths && coords.twists == o.coords.twists;
}

namespace {

constexpr const char* kMagic = "hypk-surface";

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Lines without comments and blanks, keeping their numbers.
struct Lines {
    std::vector<std::pair<int, std::string>> rows;
    std::size_t at = 0;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        for (int n = 1; std::getline(in, line); ++n) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            rows.emplace_back(n, line);
        }
    }
    int last_line() const { return rows.empty() ? 1 : rows.back().first + 1; }
    [[noreturn]] void fail(int line, const std::string& what) const {
        throw ParseError("line " + std::to_string(line) + ": " + what);
    }
    std::pair<int, std::string> next(const std::string& what) {
        if (at >= rows.size()) fail(last_line(), "missing " + what);
        return rows[at++];
    }
    bool peek(const std::string& key) const {
        if (at >= rows.size()) return false;
        std::istringstream ls(rows[at].second);
        std::string k;
        ls >> k;
        return k == key;
    }
};

template <typename T>
T field(std::istringstream& in, const Lines& lines, int line, const std::string& what) {
    T v{};
    if (!(in >> v)) lines.fail(line, "expected " + what);
    return v;
}

void expect_end(std::istringstream& in, const Lines& lines, int line) {
    std::string extra;
    if (in >> extra) lines.fail(line, "unexpected '" + extra + "'");
}

int keyed_count(Lines& lines, const std::string& key) {
    auto [n, text] = lines.next(key);
    std::istringstream in(text);
    if (field<std::string>(in, lines, n, key) != key) lines.fail(n, "expected '" + key + "'");
    int v = field<int>(in, lines, n, key + " count");
    expect_end(in, lines, n);
    if (v < 0) lines.fail(n, "negative " + key + " count");
    return v;
}

}  // namespace

std::string emit_surface(const SurfaceData& s) {
    const PantsGraph& g = s.graph;
    std::ostringstream os;
    os << kMagic << ' ' << kSurfaceSchema << '\n';
    if (!s.label.empty()) os << "label " << s.label << '\n';
    os << "genus " << g.genus << '\n';
    os << "pants " << g.num_pants() << '\n';
    for (int p = 0; p < g.num_pants(); ++p)
        os << p << ' ' << g.edge_at(p, 0) << ' ' << g.edge_at(p, 1) << ' ' << g.edge_at(p, 2) << '\n';
    os << "edges " << g.edges.size() << '\n';
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        os << e << ' ' << ed.a.pants << ' ' << ed.a.slot << ' ' << ed.b.pants << ' ' << ed.b.slot << ' '
           << real(s.coords.lengths[e]) << ' ' << real(s.coords.twists[e]) << '\n';
    }
    return os.str();
}

SurfaceData parse_surface(const std::string& text) {
    Lines lines(text);
    SurfaceData s;
    {
        auto [n, row] = lines.next("header");
        std::istringstream in(row);
        if (field<std::string>(in, lines, n, "header") != kMagic) lines.fail(n, "not a hypk surface file");
        int schema = field<int>(in, lines, n, "schema version");
        expect_end(in, lines, n);
        if (schema != kSurfaceSchema) lines.fail(n, "unsupported schema version " + std::to_string(schema));
    }
    if (lines.peek("label")) {
        auto [n, row] = lines.next("label");
        auto start = row.find("label") + 5;
        start = row.find_first_not_of(" \t", start);
        s.label = start == std::string::npos ? "" : row.substr(start);
        while (!s.label.empty() && (s.label.back() == ' ' || s.label.back() == '\r')) s.label.pop_back();
    }
    {
        auto [n, row] = lines.next("genus");
        std::istringstream in(row);
        if (field<std::string>(in, lines, n, "genus") != "genus") lines.fail(n, "expected 'genus'");
        s.graph.genus = field<int>(in, lines, n, "genus value");
        expect_end(in, lines, n);
        if (s.graph.genus < 2) lines.fail(n, "genus must be at least 2");
    }
    const int pants = keyed_count(lines, "pants");
    std::vector<std::array<int, 3>> pants_rows(pants);
    for (int p = 0; p < pants; ++p) {
        auto [n, row] = lines.next("pants row");
        std::istringstream in(row);
        if (field<int>(in, lines, n, "pants id") != p) lines.fail(n, "pants rows must be numbered in order");
        for (int& e : pants_rows[p]) e = field<int>(in, lines, n, "edge id");
        expect_end(in, lines, n);
    }
    const int edges = keyed_count(lines, "edges");
    for (int e = 0; e < edges; ++e) {
        auto [n, row] = lines.next("edge row");
        std::istringstream in(row);
        if (field<int>(in, lines, n, "edge id") != e) lines.fail(n, "edge rows must be numbered in order");
        PantsEdge ed;
        ed.a.pants = field<int>(in, lines, n, "pants a");
        ed.a.slot = field<int>(in, lines, n, "slot a");
        ed.b.pants = field<int>(in, lines, n, "pants b");
        ed.b.slot = field<int>(in, lines, n, "slot b");
        s.coords.lengths.push_back(field<double>(in, lines, n, "length"));
        s.coords.twists.push_back(field<double>(in, lines, n, "twist"));
        expect_end(in, lines, n);
        s.graph.edges.push_back(ed);
    }
    if (lines.at < lines.rows.size()) lines.fail(lines.rows[lines.at].first, "trailing content");

    if (pants != s.graph.num_pants()) throw ValidationFailed("pants count does not match the genus");
    s.graph.validate();
    s.coords.validate(s.graph);
    for (int p = 0; p < pants; ++p)
        for (int slot = 0; slot < 3; ++slot)
            if (s.graph.edge_at(p, slot) != pants_rows[p][slot])
                throw ValidationFailed("pants table disagrees with the edge table at pants " + std::to_string(p));
    return s;
}

SurfaceData load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_surface(buf.str());
}

void save_surface(const SurfaceData& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << emit_surface(s);
    if (!out) throw ParseError("write failed for " + path);
}

std::vector<std::string> preset_names() { return {"theta", "dumbbell", "fig5-example1", "fig5-example63"}; }

SurfaceData preset_surface(const std::string& name, int n, double delta) {
    SurfaceData s;
    s.label = name;
    if (name == "theta" || name == "dumbbell") {
        s.graph = name == "theta" ? presets::genus2_theta() : presets::genus2_dumbbell();
        s.coords.lengths.assign(3, 2.0);
        s.coords.twists.assign(3, 0.0);
        return s;
    }
    if (n < 2) throw DomainError("preset parameter n must be at least 2");
    if (name == "fig5-example1" || name == "fig5") {
        if (!(delta >= 0 && delta <= 1)) throw DomainError("delta must lie in [0, 1]");
        s.graph = presets::fig5();
        s.coords = presets::example1(n, delta);
        s.label = name + " n=" + std::to_string(n) + " delta=" + real(delta);
        return s;
    }
    if (name == "fig5-example63") {
        s.graph = presets::fig5_prime();
        s.coords = presets::example63(n);
        s.label = name + " n=" + std::to_string(n);
        return s;
    }
    throw DomainError("unknown preset '" + name + "'");
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        if (!tok.empty() && tok.back() == '^') {
            sign = -1;
            tok.pop_back();
        }
        auto it = std::find(names.begin(), names.end(), tok);
        if (it == names.end()) throw ParseError("unknown generator '" + tok + "'");
        w.push_back(sign * static_cast<int>(it - names.begin() + 1));
    }
    return w;
}

}  // namespace hypk
