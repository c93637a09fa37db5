#include "mumford/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mumford {

json graphToJson(const DirectedGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < g.numVertices(); ++v) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (int k = 0; k < g.numEdges(); ++k) {
        int w = g.positiveId(k);
        j["edges"].push_back({{"id", k}, {"src", g.src(w)}, {"dst", g.rng(w)}});
    }
    json fr = json::array();
    for (int v = 0; v < g.numVertices(); ++v)
        if (g.isFrontier(v)) fr.push_back(v);
    if (!fr.empty()) j["frontier"] = fr;
    return j;
}

DirectedGraph graphFromJson(const json& j) {
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph document needs 'vertices' and 'edges'");
    std::map<long long, int> vid;
    for (const auto& v : j.at("vertices")) {
        long long id = v.get<long long>();
        if (vid.count(id)) throw std::invalid_argument("duplicate vertex id " + std::to_string(id));
        int dense = static_cast<int>(vid.size());
        vid[id] = dense;
    }
    struct E { long long id; int s, r; };
    std::vector<E> edges;
    for (const auto& e : j.at("edges")) {
        long long s = e.at("src").get<long long>(), r = e.at("dst").get<long long>();
        if (!vid.count(s) || !vid.count(r)) throw std::invalid_argument("edge endpoint is not a listed vertex");
        edges.push_back({e.at("id").get<long long>(), vid[s], vid[r]});
    }
    std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].id == edges[i - 1].id) throw std::invalid_argument("duplicate edge id");
    DirectedGraph g(static_cast<int>(vid.size()));
    for (const auto& e : edges) g.addEdge(e.s, e.r);
    if (j.contains("frontier"))
        for (const auto& v : j.at("frontier")) {
            long long id = v.get<long long>();
            if (!vid.count(id)) throw std::invalid_argument("frontier vertex is not listed");
            g.setFrontier(vid[id]);
        }
    return g;
}

std::vector<std::vector<int>> readMatrixCsv(const std::string& text) {
    std::vector<std::vector<int>> a;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<int> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (cell != "0" && cell != "1") throw std::invalid_argument("matrix entry is not 0/1: '" + cell + "'");
            row.push_back(cell == "1");
        }
        a.push_back(std::move(row));
    }
    for (const auto& r : a)
        if (r.size() != a.size()) throw std::invalid_argument("matrix is not square");
    return a;
}

std::string writeMatrixCsv(const std::vector<std::vector<int>>& a) {
    std::ostringstream os;
    for (const auto& r : a) {
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j];
        os << "\n";
    }
    return os.str();
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace mumford
