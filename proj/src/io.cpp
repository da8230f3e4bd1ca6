#include "swarmdef/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swarmdef/errors.hpp"

namespace swarmdef {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t p = line.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, p - start));
        start = p + 1;
    }
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start < text.size()) {
        size_t p = text.find('\n', start);
        if (p == std::string::npos) p = text.size();
        out.push_back(text.substr(start, p - start));
        start = p + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw parse_error("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad number '" + s + "' in " + where);
    }
}

long long parse_ll(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw parse_error("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad integer '" + s + "' in " + where);
    }
}

} // namespace

std::string format_double(double v) { return fmt("%.17g", v); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string format_table_file(const WinRateTable& table) {
    std::string s;
    s += "# swarmdef-winrate-table\tr_max=" + std::to_string(table.r_max()) +
         "\tb_max=" + std::to_string(table.b_max()) + "\n";
    s += "# columns: member\twinrate\tprior\tprior_visits\tvisits\tchromosome\n";
    for (int r = 1; r <= table.r_max(); ++r) {
        for (int b = 1; b <= table.b_max(); ++b) {
            const CellStats& c = table.cell(r, b);
            s += "cell\t" + std::to_string(r) + "\t" + std::to_string(b) + "\t" +
                 format_double(c.best_winrate) + "\t" + format_double(c.top_decile_mean) +
                 "\t" + std::to_string(c.pool.size()) + "\n";
            for (const PoolMember& m : c.pool) {
                s += "member\t" + format_double(m.winrate) + "\t" +
                     format_double(m.prior_winrate) + "\t" + std::to_string(m.prior_visits) +
                     "\t" + std::to_string(m.visits) + "\t" + serialize_chromosome(m.chrom) +
                     "\n";
            }
        }
    }
    return s;
}

void write_table_file(const std::string& path, const WinRateTable& table) {
    write_text_file(path, format_table_file(table));
}

WinRateTable read_table_file(const std::string& path) {
    const auto ls = lines_of(read_text_file(path));
    if (ls.empty() || ls[0].rfind("# swarmdef-winrate-table\t", 0) != 0)
        throw parse_error("'" + path + "' is not a win-rate table file");
    const auto head = split(ls[0], '\t');
    if (head.size() != 3 || head[1].rfind("r_max=", 0) != 0 || head[2].rfind("b_max=", 0) != 0)
        throw parse_error("bad table header in '" + path + "'");
    const int r_max = static_cast<int>(parse_ll(head[1].substr(6), path));
    const int b_max = static_cast<int>(parse_ll(head[2].substr(6), path));
    WinRateTable table(r_max, b_max);

    CellStats* cur = nullptr;
    size_t declared = 0;
    for (size_t i = 1; i < ls.size(); ++i) {
        const std::string& line = ls[i];
        if (line.empty() || line[0] == '#') continue;
        const auto tok = split(line, '\t');
        if (tok[0] == "cell") {
            if (tok.size() != 6) throw parse_error("bad cell line in '" + path + "'");
            if (cur && cur->pool.size() != declared)
                throw parse_error("pool size mismatch in '" + path + "'");
            const int r = static_cast<int>(parse_ll(tok[1], path));
            const int b = static_cast<int>(parse_ll(tok[2], path));
            cur = &table.cell(r, b);
            cur->best_winrate = parse_double(tok[3], path);
            cur->top_decile_mean = parse_double(tok[4], path);
            declared = static_cast<size_t>(parse_ll(tok[5], path));
        } else if (tok[0] == "member") {
            if (!cur) throw parse_error("member before any cell in '" + path + "'");
            if (tok.size() != 6) throw parse_error("bad member line in '" + path + "'");
            PoolMember m;
            m.winrate = parse_double(tok[1], path);
            m.prior_winrate = parse_double(tok[2], path);
            m.prior_visits = parse_ll(tok[3], path);
            m.visits = parse_ll(tok[4], path);
            m.chrom = parse_chromosome(tok[5]);
            m.key = sub_chromosome_key(m.chrom);
            cur->pool.push_back(std::move(m));
        } else {
            throw parse_error("unexpected line '" + line + "' in '" + path + "'");
        }
    }
    if (cur && cur->pool.size() != declared)
        throw parse_error("pool size mismatch in '" + path + "'");
    return table;
}

void write_heatmap_csv(const std::string& path, const WinRateTable& table, TableStat stat) {
    std::string s;
    for (int r = 1; r <= table.r_max(); ++r) {
        for (int b = 1; b <= table.b_max(); ++b) {
            if (b > 1) s += ",";
            s += fmt("%.6f", table.P(r, b, stat));
        }
        s += "\n";
    }
    write_text_file(path, s);
}

void write_population_file(const std::string& path, int generation, int n_red, int n_blue,
                           std::span<const FitnessRecord> pop) {
    std::string s;
    s += "# swarmdef-population\tgeneration=" + std::to_string(generation) +
         "\tn_red=" + std::to_string(n_red) + "\tn_blue=" + std::to_string(n_blue) + "\n";
    s += "# columns: fitness\twins\tepisodes\tchromosome\n";
    for (const FitnessRecord& r : pop) {
        s += fmt("%.6f", r.fitness) + "\t" + std::to_string(r.wins) + "\t" +
             std::to_string(r.episodes) + "\t" + serialize_chromosome(r.chrom) + "\n";
    }
    write_text_file(path, s);
}

void write_candidates_file(const std::string& path, int iteration, int n_red, int n_blue,
                           std::span<const AssembledCandidate> cands) {
    std::string s;
    s += "# swarmdef-candidates\titeration=" + std::to_string(iteration) +
         "\tn_red=" + std::to_string(n_red) + "\tn_blue=" + std::to_string(n_blue) + "\n";
    s += "# columns: measured\tdp_value\tchromosome\tprovenance(r:b:key|...)\n";
    for (const AssembledCandidate& c : cands) {
        s += fmt("%.6f", c.measured) + "\t" + format_double(c.dp_value) + "\t" +
             serialize_chromosome(c.chrom) + "\t";
        for (size_t i = 0; i < c.provenance.size(); ++i) {
            if (i) s += "|";
            s += std::to_string(c.provenance[i].r) + ":" + std::to_string(c.provenance[i].b) +
                 ":" + c.provenance[i].key;
        }
        s += "\n";
    }
    write_text_file(path, s);
}

std::vector<ScoredChromosome> read_scored_chromosomes(const std::string& path) {
    const auto ls = lines_of(read_text_file(path));
    if (ls.empty()) throw parse_error("'" + path + "' is empty");
    int chrom_col;
    if (ls[0].rfind("# swarmdef-population\t", 0) == 0) {
        chrom_col = 3;
    } else if (ls[0].rfind("# swarmdef-candidates\t", 0) == 0) {
        chrom_col = 2;
    } else {
        throw parse_error("'" + path + "' is neither a population nor a candidates file");
    }
    std::vector<ScoredChromosome> out;
    for (size_t i = 1; i < ls.size(); ++i) {
        if (ls[i].empty() || ls[i][0] == '#') continue;
        const auto tok = split(ls[i], '\t');
        if (static_cast<int>(tok.size()) <= chrom_col)
            throw parse_error("short row in '" + path + "'");
        out.push_back({parse_double(tok[0], path), parse_chromosome(tok[chrom_col])});
    }
    return out;
}

void write_ledger_file(const std::string& path, const AttributionLedger& ledger) {
    std::string s;
    s += "# swarmdef-ledger\trows=" + std::to_string(ledger.rows.size()) + "\n";
    s += "# columns: r\tb\tepisodes\twins\tw3\tkey\n";
    for (const auto& [key, row] : ledger.rows) {
        s += std::to_string(row.r) + "\t" + std::to_string(row.b) + "\t" +
             std::to_string(row.episodes) + "\t" + std::to_string(row.wins) + "\t" +
             fmt("%.9f", row.w3()) + "\t" + key + "\n";
    }
    write_text_file(path, s);
}

void write_dp_solution_file(const std::string& path, int n_red, int n_blue, int k_max,
                            TableStat stat, const DPSolution& s) {
    std::string out;
    out += "# swarmdef-dp\tn_red=" + std::to_string(n_red) +
           "\tn_blue=" + std::to_string(n_blue) + "\tk_max=" + std::to_string(k_max) +
           "\tstat=" + table_stat_name(stat) + "\n";
    out += "value\t" + format_double(s.value) + "\n";
    out += "log_value\t" + format_double(s.log_value) + "\n";
    out += "partition\t";
    for (size_t i = 0; i < s.partition.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.partition[i]);
    }
    out += "\nallocation\t";
    for (size_t i = 0; i < s.allocation.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.allocation[i]);
    }
    out += "\n";
    write_text_file(path, out);
}

void write_tradeoff_csv(const std::string& path, int n_red,
                        std::span<const std::pair<int, DPSolution>> curve) {
    std::string s = "n_red,n_blue,value\n";
    for (const auto& [b, sol] : curve) {
        s += std::to_string(n_red) + "," + std::to_string(b) + "," +
             format_double(sol.value) + "\n";
    }
    write_text_file(path, s);
}

void write_refinement_curve_csv(const std::string& path,
                                std::span<const RefinementCurvePoint> curve) {
    std::string s = "iteration,best,top_decile\n";
    for (const auto& p : curve) {
        s += std::to_string(p.iteration) + "," + fmt("%.9f", p.best) + "," +
             fmt("%.9f", p.top_decile) + "\n";
    }
    write_text_file(path, s);
}

void write_ga_curve_csv(const std::string& path, std::span<const GenerationStats> history) {
    std::string s = "generation,best,mean,top_decile\n";
    for (const auto& g : history) {
        s += std::to_string(g.generation) + "," + fmt("%.9f", g.best) + "," +
             fmt("%.9f", g.mean) + "," + fmt("%.9f", g.top_decile) + "\n";
    }
    write_text_file(path, s);
}

std::string format_trace_csv(std::span<const TraceRow> rows) {
    std::string s = "step,team,index,x,y,theta,v,alive\n";
    for (const TraceRow& r : rows) {
        const char team = r.team == Team::Blue ? 'B' : (r.team == Team::Red ? 'R' : 'T');
        s += std::to_string(r.step);
        s += ',';
        s += team;
        s += ',';
        s += std::to_string(r.index);
        s += ',';
        s += fmt("%.9f", r.x) + "," + fmt("%.9f", r.y) + "," + fmt("%.9f", r.theta) + "," +
             fmt("%.9f", r.v) + ",";
        s += r.alive ? '1' : '0';
        s += '\n';
    }
    return s;
}

void write_trace_csv(const std::string& path, std::span<const TraceRow> rows) {
    write_text_file(path, format_trace_csv(rows));
}

std::uint64_t trace_hash(std::span<const TraceRow> rows) {
    const std::string text = format_trace_csv(rows);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64 offset basis
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_cooccurrence_csv(const std::string& path, std::span<const CoEdge> edges) {
    std::string s = "id_a,id_b,count\n";
    for (const CoEdge& e : edges) {
        s += std::to_string(e.a) + "," + std::to_string(e.b) + "," + std::to_string(e.count) +
             "\n";
    }
    write_text_file(path, s);
}

void write_heuristics_manifest_csv(const std::string& path) {
    std::string s = "code,name,param_use\n";
    for (const HeuristicInfo& h : heuristic_manifest()) {
        s += std::to_string(h.code) + "," + h.name + "," + h.param_use + "\n";
    }
    write_text_file(path, s);
}

void write_comparison_csv(const std::string& path, std::span<const ComparisonRow> rows) {
    std::string s = "n_red,n_blue,arm,best,top_decile\n";
    for (const ComparisonRow& r : rows) {
        s += std::to_string(r.n_red) + "," + std::to_string(r.n_blue) + "," + r.arm + "," +
             fmt("%.9f", r.best) + "," + fmt("%.9f", r.top_decile) + "\n";
    }
    write_text_file(path, s);
}

Chromosome read_chromosome_file(const std::string& path) {
    const auto ls = lines_of(read_text_file(path));
    for (const std::string& line : ls) {
        if (line.empty() || line[0] == '#') continue;
        return parse_chromosome(line);
    }
    throw parse_error("no chromosome line in '" + path + "'");
}

} // namespace swarmdef
