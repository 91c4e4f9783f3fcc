/**
 * Text formats: `.sc` facet lists, `.g` edge lists, `.csc` colored facet
 * lists, `.mf` missing-vertex tables with their facet legend, cycle
 * files, and handle-plan dumps. Emission is canonical; identical inputs
 * produce byte-identical outputs.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pltop/colorcodec.hpp"
#include "pltop/complex.hpp"
#include "pltop/dualcodec.hpp"
#include "pltop/graph.hpp"
#include "pltop/handleplan.hpp"

namespace pltop {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& why)
        : std::runtime_error("line " + std::to_string(line_) + ": " + why),
          line(line_)
    {
    }
};

struct RunConfig {
    int field = 2;
    uint64_t seed = 0;
    std::string format_version = "pltop-1";
    int verbosity = 0;
};

namespace detail {

inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text)
{
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c)))
                blank = false;
        if (!blank)
            out.push_back({no, line});
    }
    return out;
}

inline std::vector<long long> parse_ints(int line_no, const std::string& s)
{
    std::istringstream in(s);
    std::vector<long long> out;
    long long x;
    while (in >> x)
        out.push_back(x);
    std::string rest;
    if (in.clear(), in >> rest)
        throw ParseError(line_no, "unexpected token '" + rest + "'");
    return out;
}

}  // namespace detail

inline std::string emit_sc(const Complex& c)
{
    std::ostringstream out;
    for (const auto& f : c.facets) {
        for (size_t i = 0; i < f.size(); ++i)
            out << (i ? " " : "") << f[i];
        out << "\n";
    }
    return out.str();
}

inline Complex parse_sc(const std::string& text)
{
    std::vector<Facet> fs;
    for (auto& [no, line] : detail::content_lines(text)) {
        auto ints = detail::parse_ints(no, line);
        if (ints.empty())
            throw ParseError(no, "empty facet");
        Facet f;
        for (long long x : ints) {
            if (x < 0)
                throw ParseError(no, "negative vertex id");
            f.push_back(static_cast<int>(x));
        }
        fs.push_back(std::move(f));
    }
    Complex c;
    try {
        c = Complex::from_facets(std::move(fs));
    } catch (const ComplexError& e) {
        throw ParseError(0, e.what());
    }
    auto rep = validate(c);
    if (!rep.no_duplicates)
        throw ParseError(0, "duplicate facet");
    if (!rep.antichain)
        throw ParseError(0, "facets are not an antichain");
    return c;
}

inline std::string emit_g(const Graph& g)
{
    std::ostringstream out;
    out << g.n << "\n";
    for (auto [u, v] : g.edges)
        out << u << " " << v << "\n";
    return out.str();
}

inline Graph parse_g(const std::string& text)
{
    auto lines = detail::content_lines(text);
    if (lines.empty())
        throw ParseError(0, "missing vertex-count header");
    auto header = detail::parse_ints(lines[0].first, lines[0].second);
    if (header.size() != 1 || header[0] < 0)
        throw ParseError(lines[0].first, "header must be the vertex count");
    Graph g(static_cast<int>(header[0]));
    for (size_t i = 1; i < lines.size(); ++i) {
        auto ints = detail::parse_ints(lines[i].first, lines[i].second);
        if (ints.size() != 2)
            throw ParseError(lines[i].first, "expected 'u v'");
        try {
            g.add_edge(static_cast<int>(ints[0]), static_cast<int>(ints[1]));
        } catch (const GraphError& e) {
            throw ParseError(lines[i].first, e.what());
        }
    }
    return g;
}

inline std::string emit_csc(const ColoredComplex& c)
{
    std::ostringstream out;
    for (const auto& f : c.complex.facets) {
        for (size_t i = 0; i < f.size(); ++i)
            out << (i ? " " : "") << f[i];
        out << " | " << c.colors.at(f) << "\n";
    }
    return out.str();
}

inline ColoredComplex parse_csc(const std::string& text)
{
    std::vector<Facet> fs;
    std::vector<std::pair<Facet, int>> colored;
    for (auto& [no, line] : detail::content_lines(text)) {
        auto bar = line.find('|');
        if (bar == std::string::npos)
            throw ParseError(no, "missing '| color' suffix");
        auto ints = detail::parse_ints(no, line.substr(0, bar));
        auto col = detail::parse_ints(no, line.substr(bar + 1));
        if (ints.empty() || col.size() != 1)
            throw ParseError(no, "expected 'v1 ... vk | color'");
        if (col[0] < 1)
            throw ParseError(no, "colors are positive");
        Facet f;
        for (long long x : ints)
            f.push_back(static_cast<int>(x));
        std::sort(f.begin(), f.end());
        colored.push_back({f, static_cast<int>(col[0])});
        fs.push_back(f);
    }
    ColoredComplex out;
    try {
        out.complex = Complex::from_facets(fs);
    } catch (const ComplexError& e) {
        throw ParseError(0, e.what());
    }
    for (auto& [f, col] : colored)
        out.colors[f] = col;
    if (out.colors.size() != out.complex.facets.size())
        throw ParseError(0, "duplicate facet");
    return out;
}

inline std::string emit_cycles(const std::vector<Cycle>& cycles)
{
    std::ostringstream out;
    for (const auto& c : cycles) {
        for (size_t i = 0; i < c.vertices.size(); ++i)
            out << (i ? " " : "") << c.vertices[i];
        out << "\n";
    }
    return out.str();
}

inline std::vector<Cycle> parse_cycles(const std::string& text)
{
    std::vector<Cycle> out;
    for (auto& [no, line] : detail::content_lines(text)) {
        auto ints = detail::parse_ints(no, line);
        if (ints.size() < 3)
            throw ParseError(no, "a cycle walk needs at least 3 vertices");
        Cycle c;
        for (long long x : ints)
            c.vertices.push_back(static_cast<int>(x));
        out.push_back(std::move(c));
    }
    return out;
}

/// Legend lines `f <dual-id> <v1> ... <vk>`, then `<s> <t> <j>` entries.
inline std::string emit_mf(const DualEncoding& enc)
{
    std::ostringstream out;
    for (size_t i = 0; i < enc.dual.facet_of_vertex.size(); ++i) {
        out << "f " << i;
        for (int v : enc.dual.facet_of_vertex[i])
            out << " " << v;
        out << "\n";
    }
    for (auto& [key, j] : enc.missing.entries)
        out << key.first << " " << key.second << " " << j << "\n";
    return out.str();
}

struct MissingFile {
    Graph dual;
    MissingFunction missing;
    std::vector<Facet> legend;
};

inline MissingFile parse_mf(const std::string& text)
{
    MissingFile out;
    std::map<int, Facet> legend;
    std::vector<std::tuple<int, int, int>> entries;
    for (auto& [no, line] : detail::content_lines(text)) {
        std::istringstream in(line);
        std::string first;
        in >> first;
        if (first == "f") {
            auto ints = detail::parse_ints(no, line.substr(1));
            if (ints.size() < 2)
                throw ParseError(no, "legend needs 'f id v1 ...'");
            Facet f;
            for (size_t i = 1; i < ints.size(); ++i)
                f.push_back(static_cast<int>(ints[i]));
            std::sort(f.begin(), f.end());
            if (!legend.emplace(static_cast<int>(ints[0]), f).second)
                throw ParseError(no, "duplicate legend id");
        } else {
            auto ints = detail::parse_ints(no, line);
            if (ints.size() != 3)
                throw ParseError(no, "expected 's t j'");
            entries.push_back({static_cast<int>(ints[0]),
                               static_cast<int>(ints[1]),
                               static_cast<int>(ints[2])});
        }
    }
    if (legend.empty())
        throw ParseError(0, "missing facet legend");
    int n = 0;
    size_t fsize = legend.begin()->second.size();
    for (auto& [id, f] : legend) {
        if (id < 0)
            throw ParseError(0, "negative legend id");
        if (f.size() != fsize)
            throw ParseError(0, "legend facets have mixed sizes");
        n = std::max(n, id + 1);
        out.legend.resize(n);
        out.legend[id] = f;
    }
    out.missing.d = static_cast<int>(fsize) - 1;
    out.dual = Graph(n);
    for (auto& [s, t, j] : entries) {
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw ParseError(0, "entry references a missing legend id");
        if (!out.dual.has_edge(s, t) && s != t)
            out.dual.add_edge(s, t);
        if (!out.missing.entries.emplace(std::make_pair(s, t), j).second)
            throw ParseError(0, "duplicate entry");
    }
    return out;
}

inline std::string emit_plan(const HandlePlan& plan)
{
    std::ostringstream out;
    out << "k " << plan.k << "\n";
    for (auto& [e, o] : plan.edge_orient)
        out << "orient " << e.first << "-" << e.second << " -> (" << o.first
            << "," << o.second << ") reversed-at-terminal "
            << (plan.orient_flag.count({e, o.second})
                    ? (plan.orient_flag.at({e, o.second}) ? "yes" : "no")
                    : "no")
            << "\n";
    for (auto& [key, i] : plan.slot)
        out << "slot v" << key.first << " edge " << key.second.first << "-"
            << key.second.second << " -> " << i << "\n";
    for (auto& [key, j] : plan.tri_order)
        out << "track edge " << key.first.first << "-" << key.first.second
            << " tri " << facet_to_string(key.second) << " -> " << j << "\n";
    for (auto& [key, coords] : plan.path_choice)
        out << "path tri " << facet_to_string(key.first) << " v" << key.second
            << " -> (" << coords.first.first << "," << coords.first.second
            << ")-(" << coords.second.first << "," << coords.second.second
            << ")\n";
    return out.str();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace pltop
