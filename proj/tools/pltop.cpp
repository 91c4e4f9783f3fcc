// pltop command-line tool: codecs and checks between graphs, cycle
// collections, 2-complexes, triangulations, and dual-graph encodings.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "pltop/colorcodec.hpp"
#include "pltop/complex.hpp"
#include "pltop/diskfill.hpp"
#include "pltop/dualcodec.hpp"
#include "pltop/graph.hpp"
#include "pltop/graphkit.hpp"
#include "pltop/handleplan.hpp"
#include "pltop/io.hpp"
#include "pltop/isomorphism.hpp"
#include "pltop/telescope.hpp"

using namespace pltop;

namespace {

struct Output {
    std::optional<std::string> out_path;
    std::optional<std::string> report_path;
    std::ostringstream report;

    void flush()
    {
        if (report_path)
            write_file(*report_path, report.str());
        else if (!report.str().empty())
            std::cout << report.str();
    }

    void payload(const std::string& content)
    {
        if (out_path)
            write_file(*out_path, content);
        else
            std::cout << content;
    }
};

Facet parse_facet_arg(const std::string& s)
{
    std::istringstream in(s);
    Facet f;
    int x;
    while (in >> x)
        f.push_back(x);
    if (f.empty())
        throw std::runtime_error("empty facet argument");
    std::sort(f.begin(), f.end());
    return f;
}

std::vector<int> parse_int_list(const std::string& s)
{
    std::istringstream in(s);
    std::vector<int> out;
    int x;
    char sep;
    while (in >> x) {
        out.push_back(x);
        in >> sep;
    }
    return out;
}

// portable palette for the dual-coloring legend: index <-> (c0, c1 pairs)
struct ColorLegend {
    int d = 0;
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> entries;

    std::string emit() const
    {
        std::ostringstream out;
        out << "d " << d << "\n";
        for (size_t i = 0; i < entries.size(); ++i) {
            out << "color " << (i + 1) << " " << entries[i].first;
            for (auto& [c, j] : entries[i].second)
                out << " " << c << " " << j;
            out << "\n";
        }
        return out.str();
    }

    static ColorLegend parse(const std::string& text)
    {
        ColorLegend leg;
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            std::istringstream ls(line);
            std::string tag;
            if (!(ls >> tag))
                continue;
            if (tag == "d") {
                ls >> leg.d;
            } else if (tag == "color") {
                int idx, c0;
                ls >> idx >> c0;
                std::vector<std::pair<int, int>> pairs;
                int c, j;
                while (ls >> c >> j)
                    pairs.push_back({c, j});
                if (idx != static_cast<int>(leg.entries.size()) + 1)
                    throw ParseError(no, "legend indices must be sequential");
                leg.entries.push_back({c0, pairs});
            } else {
                throw ParseError(no, "unknown legend tag '" + tag + "'");
            }
        }
        if (leg.d < 1 || leg.entries.empty())
            throw ParseError(0, "legend is incomplete");
        return leg;
    }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"computational PL topology toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    Output io;
    app.add_option("--field", cfg.field, "coefficient field prime")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--out", io.out_path, "output file (default stdout)");
    app.add_option("--report", io.report_path, "report file (default stdout)");
    app.add_flag("-v,--verbose", cfg.verbosity, "verbose reporting");

    std::string in1, in2, in3;
    std::string facet_arg, facet_arg2, bij_arg, colors_arg, order_arg, mode_arg =
        "greedy";
    int d_arg = 2, r_arg = 1, k_arg = 0, degmax_arg = 0, L_arg = 0, c_arg = 1;
    int levels_arg = 1, trials_arg = 100;
    std::optional<int> threshold_arg;
    bool uniform_flag = false;

    auto* c_validate = app.add_subcommand("validate", "validate a .sc complex");
    c_validate->add_option("input", in1)->required();

    auto* c_betti = app.add_subcommand("betti", "Betti numbers over GF(p)");
    c_betti->add_option("input", in1)->required();

    auto* c_dual = app.add_subcommand("dual-graph", "dual graph of a complex");
    c_dual->add_option("input", in1)->required();

    auto* c_bary = app.add_subcommand("barycentric", "barycentric subdivision");
    c_bary->add_option("input", in1)->required();

    auto* c_stellate = app.add_subcommand("stellate", "stellar subdivision at a facet");
    c_stellate->add_option("input", in1)->required();
    c_stellate->add_option("--facet", facet_arg, "facet vertices, e.g. '0 1 2'")
        ->required();

    auto* c_csum = app.add_subcommand("connect-sum", "connected sum of two complexes");
    c_csum->add_option("first", in1)->required();
    c_csum->add_option("second", in2)->required();
    c_csum->add_option("--fx", facet_arg, "facet of the first complex")->required();
    c_csum->add_option("--fy", facet_arg2, "facet of the second complex")->required();

    auto* c_cheeger = app.add_subcommand("cheeger", "exact edge expansion");
    c_cheeger->add_option("input", in1)->required();

    auto* c_lambda2 = app.add_subcommand("lambda2", "normalized Laplacian gap");
    c_lambda2->add_option("input", in1)->required();

    auto* c_short = app.add_subcommand("check-short", "verify a short certificate");
    c_short->add_option("graph", in1)->required();
    c_short->add_option("cycles", in2)->required();
    c_short->add_option("--degmax", degmax_arg)->required();
    c_short->add_option("--k", k_arg)->required();
    c_short->add_option("--L", L_arg)->required();
    c_short->add_flag("--uniform", uniform_flag);

    auto* c_qi = app.add_subcommand("qi-check", "verify a quasi-isometry relation");
    c_qi->add_option("first", in1)->required();
    c_qi->add_option("second", in2)->required();
    c_qi->add_option("relation", in3, "file of 'x y' pairs")->required();
    c_qi->add_option("--c", c_arg, "granularity constant");

    auto* c_443 = app.add_subcommand("four-to-three", "4-regular to 3-regular gadgets");
    c_443->add_option("input", in1)->required();

    auto* c_344 = app.add_subcommand("three-to-four", "contract gadget 4-cycles back");
    c_344->add_option("input", in1)->required();

    auto* c_pe = app.add_subcommand("pendant-encode", "attach color-many pendants");
    c_pe->add_option("input", in1)->required();
    c_pe->add_option("--colors", colors_arg, "comma-separated colors")->required();

    auto* c_pd = app.add_subcommand("pendant-decode", "erase pendants, read colors");
    c_pd->add_option("input", in1)->required();

    auto* c_fill = app.add_subcommand("fill-cycles", "graph + cycles to a 2-complex");
    c_fill->add_option("graph", in1)->required();
    c_fill->add_option("cycles", in2)->required();
    c_fill->add_option("--degmax", degmax_arg)->required();
    c_fill->add_option("--k", k_arg)->required();
    c_fill->add_option("--threshold", threshold_arg);

    auto* c_recover = app.add_subcommand("recover-graph", "edges above the threshold");
    c_recover->add_option("input", in1)->required();
    c_recover->add_option("--threshold", k_arg)->required();

    auto* c_enc = app.add_subcommand("encode-colors", "colored complex to plain");
    c_enc->add_option("input", in1)->required();
    c_enc->add_option("--d", d_arg)->required();
    c_enc->add_option("--r", r_arg)->required();

    auto* c_dec = app.add_subcommand("decode-colors", "recover the colored complex");
    c_dec->add_option("input", in1)->required();
    c_dec->add_option("--d", d_arg)->required();
    c_dec->add_option("--r", r_arg)->required();

    auto* c_menc = app.add_subcommand("dual-encode", "missing-vertex function");
    c_menc->add_option("input", in1)->required();
    c_menc->add_option("--order", order_arg, "vertex order (default sorted)");

    auto* c_mdec = app.add_subcommand("dual-decode", "reconstruct from a .mf file");
    c_mdec->add_option("input", in1)->required();

    auto* c_plan = app.add_subcommand("handle-plan", "handle gluing plan");
    c_plan->add_option("input", in1)->required();
    c_plan->add_option("--k", k_arg)->required();
    std::optional<std::string> incidence_out;
    c_plan->add_option("--incidence-out", incidence_out, "incidence graph .g file");

    auto* c_tel = app.add_subcommand("telescope", "telescope operations");
    auto* c_tel_build = c_tel->add_subcommand("build", "build a telescope tower");
    std::string base_path;
    c_tel_build->add_option("--base", base_path)->required();
    c_tel_build->add_option("--levels", levels_arg)->required();
    c_tel_build->add_option("--trials", trials_arg);

    auto* c_collapse = app.add_subcommand("collapse", "greedy free-face collapse");
    c_collapse->add_option("input", in1)->required();
    c_collapse->add_option("--mode", mode_arg, "greedy (scheduled runs in telescope build)");

    auto* c_g2s = app.add_subcommand("graph-to-sphere-codec",
                                     "fundamental basis, then cycle filling");
    c_g2s->add_option("input", in1)->required();

    auto* c_s2g = app.add_subcommand("sphere-to-graph-codec",
                                     "dual coloring, then pendant encoding");
    c_s2g->add_option("input", in1)->required();
    std::optional<std::string> legend_path;
    c_s2g->add_option("--legend", legend_path, "color legend file")->required();

    auto* c_s2g_dec = app.add_subcommand("sphere-to-graph-decode",
                                         "invert the sphere-to-graph codec");
    c_s2g_dec->add_option("input", in1)->required();
    c_s2g_dec->add_option("--legend", legend_path, "color legend file")->required();

    for (auto* sub :
         {c_validate, c_betti, c_dual, c_bary, c_stellate, c_csum, c_cheeger,
          c_lambda2, c_short, c_qi, c_443, c_344, c_pe, c_pd, c_fill, c_recover,
          c_enc, c_dec, c_menc, c_mdec, c_plan, c_tel, c_collapse, c_g2s, c_s2g,
          c_s2g_dec})
        sub->fallthrough();
    c_tel_build->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_validate) {
            auto c = parse_sc(read_file(in1));
            auto rep = validate(c);
            io.report << "facets " << c.facet_count() << "\n"
                      << "vertices " << c.vertex_count() << "\n"
                      << "dim " << c.dim() << "\n"
                      << "antichain " << (rep.antichain ? "yes" : "no") << "\n"
                      << "duplicates " << (rep.no_duplicates ? "no" : "yes") << "\n"
                      << "pure " << (rep.pure ? "yes" : "no") << "\n"
                      << "pseudomanifold " << (rep.pseudomanifold ? "yes" : "no")
                      << "\n"
                      << "closed-pseudomanifold "
                      << (rep.closed_pseudomanifold ? "yes" : "no") << "\n";
            io.flush();
            return rep.valid() ? 0 : 1;
        }
        if (*c_betti) {
            auto c = parse_sc(read_file(in1));
            auto b = betti(c, cfg.field);
            io.report << "p " << b.p << "\n";
            for (size_t i = 0; i < b.betti.size(); ++i)
                io.report << "b" << i << " " << b.betti[i] << "\n";
            io.flush();
            return 0;
        }
        if (*c_dual) {
            auto c = parse_sc(read_file(in1));
            auto dg = dual_graph(c);
            io.payload(emit_g(dg.graph));
            for (size_t i = 0; i < dg.facet_of_vertex.size(); ++i)
                io.report << "facet " << i << " "
                          << facet_to_string(dg.facet_of_vertex[i]) << "\n";
            io.flush();
            return 0;
        }
        if (*c_bary) {
            auto c = parse_sc(read_file(in1));
            auto [b, prov] = barycentric(c);
            io.payload(emit_sc(b));
            if (cfg.verbosity)
                for (auto& [v, face] : prov.vertex_origin)
                    io.report << "vertex " << v << " from "
                              << facet_to_string(face) << "\n";
            io.flush();
            return 0;
        }
        if (*c_stellate) {
            auto c = parse_sc(read_file(in1));
            io.payload(emit_sc(stellate_facet(c, parse_facet_arg(facet_arg))));
            return 0;
        }
        if (*c_csum) {
            auto x = parse_sc(read_file(in1));
            auto y = parse_sc(read_file(in2));
            Facet fx = parse_facet_arg(facet_arg), fy = parse_facet_arg(facet_arg2);
            std::map<int, int> bij;
            for (size_t i = 0; i < fx.size() && i < fy.size(); ++i)
                bij[fx[i]] = fy[i];
            io.payload(emit_sc(connected_sum(x, fx, y, fy, bij)));
            return 0;
        }
        if (*c_cheeger) {
            auto g = parse_g(read_file(in1));
            auto h = cheeger_exact(g);
            io.report << h.num << "/" << h.den << " = " << h.value() << "\n";
            io.flush();
            return 0;
        }
        if (*c_lambda2) {
            auto g = parse_g(read_file(in1));
            io.report << lambda2(g) << "\n";
            io.flush();
            return 0;
        }
        if (*c_short) {
            auto g = parse_g(read_file(in1));
            ShortCertificate cert;
            cert.deg_max = degmax_arg;
            cert.k = k_arg;
            cert.L = L_arg;
            cert.p = cfg.field;
            cert.uniform = uniform_flag;
            cert.cycles = parse_cycles(read_file(in2));
            auto rep = check_short(g, cert);
            io.report << (rep.ok ? "valid" : "invalid") << "\n"
                      << "rank " << rep.rank << "/" << rep.expected_rank << "\n"
                      << "max-multiplicity " << rep.max_multiplicity << "\n"
                      << "average-length " << rep.average_length << "\n";
            for (auto& v : rep.violations)
                io.report << "violation: " << v << "\n";
            io.flush();
            return rep.ok ? 0 : 1;
        }
        if (*c_qi) {
            auto x = parse_g(read_file(in1));
            auto y = parse_g(read_file(in2));
            QIRelation rel;
            rel.c = c_arg;
            std::istringstream in(read_file(in3));
            int a, b;
            while (in >> a >> b)
                rel.pairs.insert({a, b});
            auto rep = qi_check(x, y, rel);
            if (rep.ok)
                io.report << "M " << rep.M << "\nmap-bound "
                          << (rep.map_bound_ok ? "holds" : "fails") << "\n";
            else
                io.report << "violated condition " << rep.violated_condition
                          << ": " << rep.witness << "\n";
            io.flush();
            return rep.ok ? 0 : 1;
        }
        if (*c_443) {
            auto g = parse_g(read_file(in1));
            auto [h, gm] = four_to_three(g);
            io.payload(emit_g(h));
            for (size_t v = 0; v < gm.corners.size(); ++v)
                io.report << "gadget " << v << " corners " << gm.corners[v][0]
                          << " " << gm.corners[v][1] << " " << gm.corners[v][2]
                          << " " << gm.corners[v][3] << "\n";
            io.flush();
            return 0;
        }
        if (*c_344) {
            auto g = parse_g(read_file(in1));
            io.payload(emit_g(three_to_four_decode(g)));
            return 0;
        }
        if (*c_pe) {
            auto g = parse_g(read_file(in1));
            io.payload(emit_g(pendant_color_encode(g, parse_int_list(colors_arg))));
            return 0;
        }
        if (*c_pd) {
            auto g = parse_g(read_file(in1));
            auto [core, colors] = pendant_color_decode(g);
            io.payload(emit_g(core));
            io.report << "colors";
            for (int c : colors)
                io.report << " " << c;
            io.report << "\n";
            io.flush();
            return 0;
        }
        if (*c_fill) {
            auto g = parse_g(read_file(in1));
            DiskFillParams params;
            params.p = cfg.field;
            params.deg_max = degmax_arg;
            params.k = k_arg;
            params.threshold = threshold_arg;
            auto filled = fill_cycles(g, parse_cycles(read_file(in2)), params);
            io.payload(emit_sc(filled.complex));
            io.report << "threshold " << filled.threshold << "\n"
                      << "disks " << filled.basis.size() << "\n";
            io.flush();
            return 0;
        }
        if (*c_recover) {
            auto c = parse_sc(read_file(in1));
            auto rec = recover_graph(c, k_arg);
            io.payload(emit_g(rec.graph));
            io.report << "vertex-ids";
            for (int v : rec.vertex_ids)
                io.report << " " << v;
            io.report << "\n";
            io.flush();
            return 0;
        }
        if (*c_enc) {
            auto colored = parse_csc(read_file(in1));
            if (colored.complex.dim() != d_arg)
                throw ComplexError("input dimension disagrees with --d");
            io.payload(emit_sc(encode(colored, r_arg)));
            return 0;
        }
        if (*c_dec) {
            auto c = parse_sc(read_file(in1));
            io.payload(emit_csc(decode(c, d_arg, r_arg)));
            return 0;
        }
        if (*c_menc) {
            auto c = parse_sc(read_file(in1));
            std::vector<int> order = order_arg.empty() ? c.vertices()
                                                       : parse_int_list(order_arg);
            io.payload(emit_mf(missing_function(c, order)));
            return 0;
        }
        if (*c_mdec) {
            auto file = parse_mf(read_file(in1));
            io.payload(emit_sc(reconstruct(file.dual, file.missing, file.missing.d)));
            return 0;
        }
        if (*c_plan) {
            auto c = parse_sc(read_file(in1));
            auto plan = build_plan(c, k_arg);
            validate_plan(plan, c);
            io.payload(emit_plan(plan));
            if (incidence_out) {
                auto inc = handle_incidence(plan, c);
                write_file(*incidence_out, emit_g(inc.graph));
            }
            io.report << "schedule-decreasing "
                      << (schedule_is_decreasing(collapse_schedule(plan, c))
                              ? "yes"
                              : "no")
                      << "\n";
            io.flush();
            return 0;
        }
        if (*c_tel_build) {
            auto base = parse_g(read_file(base_path));
            auto h = build_hierarchy(base, levels_arg, trials_arg, cfg.seed);
            auto tc = telescope_complex(h);
            io.payload(emit_sc(tc.complex));
            io.report << "levels";
            for (auto& g : h.levels)
                io.report << " " << g.n;
            io.report << "\n";
            auto scheduled = collapse_scheduled(tc);
            io.report << "scheduled-collapse "
                      << (scheduled.collapsed ? "point" : "stuck") << "\n";
            for (auto& rep : expansion_report(h)) {
                io.report << "level " << rep.level << " lambda2 " << rep.lambda2
                          << " max-degree " << rep.max_degree << " bound "
                          << rep.degree_bound;
                if (rep.h_exact)
                    io.report << " conductance " << rep.h_exact->num << "/"
                              << rep.h_exact->den;
                io.report << "\n";
            }
            io.flush();
            return 0;
        }
        if (*c_collapse) {
            if (mode_arg != "greedy")
                throw std::runtime_error(
                    "only greedy mode reads a bare .sc; scheduled collapse runs "
                    "inside telescope build");
            auto c = parse_sc(read_file(in1));
            auto rep = collapse_greedy(c);
            io.report << (rep.collapsed ? "collapsible" : "stuck") << "\n"
                      << "steps " << rep.steps << "\n"
                      << "core-facets " << rep.core.facet_count() << "\n";
            if (!rep.collapsed)
                io.report << emit_sc(rep.core);
            io.flush();
            return rep.collapsed ? 0 : 1;
        }
        if (*c_g2s) {
            auto g = parse_g(read_file(in1));
            auto basis = fundamental_cycle_basis(g);
            std::map<std::pair<int, int>, int> mult;
            for (auto& c : basis)
                for (int i = 0; i < c.length(); ++i)
                    ++mult[std::minmax(c.vertices[i],
                                       c.vertices[(i + 1) % c.length()])];
            DiskFillParams params;
            params.p = cfg.field;
            params.deg_max = max_degree(g);
            params.k = 0;
            for (auto& [e, m] : mult)
                params.k = std::max(params.k, m);
            if (params.k == 0)
                params.k = 1;
            auto filled = fill_cycles(g, basis, params);
            io.payload(emit_sc(filled.complex));
            auto b = betti(filled.complex, cfg.field);
            io.report << "threshold " << filled.threshold << "\n";
            for (size_t i = 0; i < b.betti.size(); ++i)
                io.report << "b" << i << " " << b.betti[i] << "\n";
            io.flush();
            return 0;
        }
        if (*c_s2g || *c_s2g_dec) {
            if (*c_s2g) {
                auto c = parse_sc(read_file(in1));
                auto enc = dual_coloring(c, c.vertices());
                // collapse (c0, c1) values to a palette of indices
                std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> index;
                ColorLegend legend;
                legend.d = c.dim();
                std::vector<int> colors(enc.dual.graph.n);
                for (int v = 0; v < enc.dual.graph.n; ++v) {
                    auto key = std::make_pair(enc.coloring.c0[v], enc.coloring.c1[v]);
                    auto it = index.find(key);
                    if (it == index.end()) {
                        legend.entries.push_back(key);
                        it = index.emplace(key,
                                           static_cast<int>(legend.entries.size()))
                                 .first;
                    }
                    colors[v] = it->second;
                }
                io.payload(emit_g(pendant_color_encode(enc.dual.graph, colors)));
                write_file(*legend_path, legend.emit());
                io.flush();
                return 0;
            }
            auto g = parse_g(read_file(in1));
            auto legend = ColorLegend::parse(read_file(*legend_path));
            auto [core, colors] = pendant_color_decode(g);
            DualColoring col;
            col.d = legend.d;
            col.c0.resize(core.n);
            col.c1.resize(core.n);
            for (int v = 0; v < core.n; ++v) {
                if (colors[v] < 1 ||
                    colors[v] > static_cast<int>(legend.entries.size()))
                    throw ComplexError("pendant count outside the legend");
                col.c0[v] = legend.entries[colors[v] - 1].first;
                col.c1[v] = legend.entries[colors[v] - 1].second;
            }
            io.payload(emit_sc(decode_dual_coloring(core, col, legend.d)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
