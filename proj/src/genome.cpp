#include "swarmdef/genome.hpp"

#include <cstdio>
#include <cstdlib>

#include "swarmdef/errors.hpp"

namespace swarmdef {

void validate_gene(const Gene& g, int n_warehouses) {
    const int code = static_cast<int>(g.h);
    if (code < 0 || code >= kNumHeuristics)
        throw invalid_gene_error("heuristic code out of range: " + std::to_string(code));
    if (g.warehouse < 0 || (n_warehouses >= 0 && g.warehouse >= n_warehouses))
        throw invalid_gene_error("warehouse out of range: " + std::to_string(g.warehouse));
    if (!(g.param >= 0.0 && g.param <= 1.0))
        throw invalid_gene_error("param outside [0,1]: " + std::to_string(g.param));
}

void validate_chromosome(const Chromosome& c, int n_warehouses) {
    for (const Gene& g : c) validate_gene(g, n_warehouses);
}

Chromosome random_chromosome(int n_genes, int n_warehouses, Rng& rng) {
    Chromosome c(static_cast<size_t>(n_genes));
    for (Gene& g : c) {
        g.h = static_cast<HeuristicId>(rng.uniform_int(kNumHeuristics));
        g.warehouse = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(n_warehouses)));
        g.param = rng.next_double();
    }
    return c;
}

Chromosome mutate(Chromosome c, double rate, int n_warehouses, Rng& rng) {
    for (Gene& g : c) {
        if (rng.next_double() >= rate) continue;
        switch (rng.uniform_int(3)) {
        case 0:
            g.h = static_cast<HeuristicId>(rng.uniform_int(kNumHeuristics));
            break;
        case 1:
            g.warehouse = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(n_warehouses)));
            break;
        default:
            g.param = clamp(g.param + rng.normal(0.0, 0.1), 0.0, 1.0);
            break;
        }
    }
    return c;
}

std::pair<Chromosome, Chromosome> crossover_single_point(const Chromosome& a,
                                                         const Chromosome& b,
                                                         int point) {
    if (a.size() != b.size())
        throw invalid_cross_error("parent lengths differ: " + std::to_string(a.size()) +
                                  " vs " + std::to_string(b.size()));
    const int n = static_cast<int>(a.size());
    if (n < 2) throw invalid_cross_error("parents too short for crossover");
    if (point < 1 || point > n - 1)
        throw invalid_cross_error("cut point out of range: " + std::to_string(point));

    Chromosome c1(a.begin(), a.begin() + point);
    c1.insert(c1.end(), b.begin() + point, b.end());
    Chromosome c2(b.begin(), b.begin() + point);
    c2.insert(c2.end(), a.begin() + point, a.end());
    return {std::move(c1), std::move(c2)};
}

Chromosome concat(std::span<const Chromosome> subs) {
    Chromosome out;
    size_t total = 0;
    for (const auto& s : subs) total += s.size();
    out.reserve(total);
    for (const auto& s : subs) out.insert(out.end(), s.begin(), s.end());
    return out;
}

std::string serialize_chromosome(const Chromosome& c) {
    std::string out;
    out.reserve(c.size() * 14);
    char buf[64];
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out.push_back(';');
        std::snprintf(buf, sizeof buf, "%d,%d,%.6f", static_cast<int>(c[i].h),
                      c[i].warehouse, c[i].param);
        out += buf;
    }
    return out;
}

std::string exact_chromosome_repr(const Chromosome& c) {
    std::string out;
    out.reserve(c.size() * 28);
    char buf[96];
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out.push_back(';');
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g", static_cast<int>(c[i].h),
                      c[i].warehouse, c[i].param);
        out += buf;
    }
    return out;
}

namespace {

Gene parse_gene(const std::string& text, int n_warehouses) {
    int h = 0, w = 0;
    double p = 0.0;
    char trailing = 0;
    const int got = std::sscanf(text.c_str(), "%d,%d,%lf%c", &h, &w, &p, &trailing);
    if (got != 3) throw invalid_gene_error("malformed gene: '" + text + "'");
    Gene g{static_cast<HeuristicId>(h), w, p};
    validate_gene(g, n_warehouses);
    return g;
}

} // namespace

Chromosome parse_chromosome(const std::string& text, int n_warehouses) {
    Chromosome out;
    if (text.empty()) return out;
    size_t start = 0;
    while (true) {
        const size_t sep = text.find(';', start);
        const std::string part =
            sep == std::string::npos ? text.substr(start) : text.substr(start, sep - start);
        out.push_back(parse_gene(part, n_warehouses));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return out;
}

} // namespace swarmdef
