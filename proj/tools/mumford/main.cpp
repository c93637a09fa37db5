#include "mumford/acceptance.hpp"
#include "mumford/bruhat_tits.hpp"
#include "mumford/field_extension.hpp"
#include "mumford/foam.hpp"
#include "mumford/io.hpp"
#include "mumford/operators.hpp"
#include "mumford/schottky.hpp"
#include "mumford/shift.hpp"
#include "mumford/zeta.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace mumford;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kTolerance = 3;
constexpr int kUsage = 64;

struct ToleranceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

void emitJson(const json& j, const std::string& path) { emit(j.dump(2), path); }

json loadJson(const std::string& path) {
    try {
        return json::parse(readFile(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Alphabet parseAlphabet(const std::string& s) {
    if (s == "walks") return Alphabet::Walks;
    if (s == "paths") return Alphabet::Paths;
    throw std::invalid_argument("alphabet must be walks or paths");
}

// "a,b;c,d" with rational entries.
Mat2 parseMat2(const std::string& s) {
    std::vector<Q> e;
    std::string cur;
    for (char c : s + ";") {
        if (c == ',' || c == ';') {
            e.push_back(parseRational(cur));
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (e.size() != 4) throw std::invalid_argument("matrix '" + s + "' needs four entries a,b;c,d");
    return mat2(e[0], e[1], e[2], e[3]);
}

std::vector<cplx> parseGrid(const std::string& s) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parseComplex(item));
    if (out.empty()) throw std::invalid_argument("empty s-grid");
    return out;
}

json walkJson(const DirectedGraph& g, const Walk& w) {
    json a = json::array();
    for (int x : w) {
        int k = g.edgeIndex(x);
        if (g.isPositive(x)) a.push_back(k);
        else a.push_back("~" + std::to_string(k));
    }
    return a;
}

json rowsJson(const std::vector<LocalFactorRow>& rows, double tol, bool& allPass) {
    json a = json::array();
    allPass = true;
    for (const auto& r : rows) {
        json j;
        j["s"] = formatComplex(r.s);
        j["det"] = formatComplex(r.det);
        j["closed_form"] = formatComplex(r.closedForm);
        j["rel_error"] = r.relError;
        j["tolerance"] = tol;
        j["pass"] = r.pass;
        if (r.skipped) j["skipped"] = r.note;
        allPass = allPass && (r.pass || r.skipped);
        a.push_back(j);
    }
    return a;
}

std::string rowsCsv(const std::vector<LocalFactorRow>& rows) {
    std::ostringstream os;
    os << "s,det,closed_form,rel_error\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3e", r.relError);
        os << formatComplex(r.s) << ',' << formatComplex(r.det) << ',' << formatComplex(r.closedForm) << ',' << buf << '\n';
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bruhat-Tits trees, Schottky quotients, subshift filtrations and local factors"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("-o,--out", out, "Output path (default stdout)");

    // tree
    auto* tree = app.add_subcommand("tree", "Ball in the Bruhat-Tits tree");
    unsigned long tp = 2;
    int tradius = 2;
    std::string tdot;
    tree->add_option("--p", tp, "Prime")->check(CLI::PositiveNumber);
    tree->add_option("--radius", tradius, "Radius")->check(CLI::NonNegativeNumber);
    tree->add_option("--dot", tdot, "Also write DOT to this path");

    // schottky
    auto* sch = app.add_subcommand("schottky", "Certify a Schottky group and build its quotient dual graph");
    unsigned long sp = 2;
    std::vector<std::string> sgens;
    int swords = 2, sradius = 5, sreduction = 0;
    bool sequalize = false, sstabilize = false;
    std::string sgraphOut;
    sch->add_option("--p", sp, "Prime");
    sch->add_option("--gen", sgens, "Generator a,b;c,d (repeatable)")->required();
    sch->add_option("--word-bound", swords, "Hull word length")->check(CLI::PositiveNumber);
    sch->add_option("--radius", sradius, "Ambient patch radius")->check(CLI::PositiveNumber);
    sch->add_option("--n", sreduction, "Reduction level (0 for the minimal tree)")->check(CLI::NonNegativeNumber);
    sch->add_flag("--equalize", sequalize, "Subdivide to equal loop lengths");
    sch->add_flag("--stabilize", sstabilize, "Contract removable valence-two vertices");
    sch->add_option("--graph-out", sgraphOut, "Write the dual graph document here");

    // extend
    auto* ext = app.add_subcommand("extend", "Field extension of an edge matrix or graph");
    int ee = 1, ef = 1;
    std::string ematrix, egraph;
    ext->add_option("--e", ee, "Ramification index")->check(CLI::PositiveNumber);
    ext->add_option("--f", ef, "Residue degree")->check(CLI::PositiveNumber);
    auto* em = ext->add_option("--matrix", ematrix, "CSV of 0/1 rows (A+)");
    auto* eg = ext->add_option("--graph", egraph, "Graph document");
    em->excludes(eg);

    // sft
    auto* sft = app.add_subcommand("sft", "Theta counts and filtration ranks");
    std::string sfGraph, sfAlphabet = "walks";
    int sfN = 4;
    unsigned long sfq = 2;
    sft->add_option("--graph", sfGraph, "Graph document")->required();
    sft->add_option("--nmax", sfN, "Largest level")->check(CLI::PositiveNumber);
    sft->add_option("--alphabet", sfAlphabet, "walks or paths");
    sft->add_option("--q", sfq, "Weight base");

    // measure
    auto* mea = app.add_subcommand("measure", "Boundary measure of a cylinder in a tree patch");
    unsigned long mp = 2;
    int mradius = 4, mmarking = 0;
    std::vector<int> mword;
    mea->add_option("--p", mp, "Prime");
    mea->add_option("--radius", mradius, "Patch radius");
    mea->add_option("--word", mword, "Patch vertex ids along the segment")->required()->expected(2, -1);
    mea->add_option("--marking", mmarking, "Marked edge index");

    // ck
    auto* ck = app.add_subcommand("ck", "Cuntz-Krieger relations at finite truncation");
    std::string ckGraph, ckAlphabet = "paths";
    int ckN = 4;
    ck->add_option("--graph", ckGraph, "Graph document")->required();
    ck->add_option("--N", ckN, "Truncation")->check(CLI::Range(2, 12));
    ck->add_option("--alphabet", ckAlphabet, "walks or paths");

    // dirac
    auto* dir = app.add_subcommand("dirac", "Dirac spectrum by level");
    std::string dvariant = "plain";
    int dl = 1, dn = 4;
    unsigned long dq = 2;
    dir->add_option("--variant", dvariant, "plain or scaled");
    dir->add_option("--l", dl, "Loop length")->check(CLI::PositiveNumber);
    dir->add_option("--q", dq, "Residue cardinality");
    dir->add_option("--nmax", dn, "Largest level")->check(CLI::NonNegativeNumber);

    // euler
    auto* eul = app.add_subcommand("euler", "Regularized determinant against the local factor");
    std::string emode = "split", elambdas, es, egrid, eformat = "json";
    unsigned long eq = 2;
    int eg2 = 1, el = 1;
    double etol = 1e-8;
    eul->add_option("--mode", emode, "split or foam");
    eul->add_option("--q", eq, "Residue cardinality");
    eul->add_option("--g", eg2, "Genus (split)")->check(CLI::PositiveNumber);
    eul->add_option("--l", el, "Loop length")->check(CLI::PositiveNumber);
    eul->add_option("--lambdas", elambdas, "Foam document (foam)");
    auto* es1 = eul->add_option("--s", es, "Single s");
    auto* es2 = eul->add_option("--s-grid", egrid, "Comma separated s values");
    es1->excludes(es2);
    eul->add_option("--tol", etol, "Relative tolerance");
    eul->add_option("--format", eformat, "json or csv");

    // foam
    auto* foa = app.add_subcommand("foam", "Foam graph and per-eigenvalue embeddings");
    std::string fspec, fgrid;
    int fdepth = 6, fn = 2;
    foa->add_option("--spec", fspec, "Foam document")->required();
    foa->add_option("--tail-depth", fdepth, "Tail depth")->check(CLI::PositiveNumber);
    foa->add_option("--nmax", fn, "Largest repetition N")->check(CLI::PositiveNumber);
    foa->add_option("--s-grid", fgrid, "Also evaluate determinants on this grid");

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
    std::vector<int> stRed;
    st->add_option("--known-red", stRed, "Criteria expected to fail")->check(CLI::Range(1, kCriteria));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*tree) {
            TreePatch t = buildTreePatch(PadicContext::make(tp), baseClass(tp), tradius);
            json j;
            j["p"] = tp;
            j["radius"] = tradius;
            j["vertices"] = json::array();
            for (int v = 0; v < t.graph.numVertices(); ++v)
                j["vertices"].push_back({{"id", v}, {"class", t.labels[v].key()}, {"dist", t.dist[v]}, {"frontier", t.isFrontier(v)}});
            j["graph"] = graphToJson(t.graph);
            bool valence = true;
            for (int v = 0; v < t.graph.numVertices(); ++v)
                if (!t.isFrontier(v)) valence = valence && t.neighbors(v).size() == tp + 1;
            j["interior_valence_ok"] = valence;
            if (!tdot.empty()) emit(toDot(t.graph, "tree"), tdot);
            emitJson(j, out);
        } else if (*sch) {
            SchottkyGroup g;
            g.ctx = PadicContext::make(sp);
            for (const auto& s : sgens) g.generators.push_back(parseMat2(s));
            g.wordBound = swords;
            SubTree sub = buildSchottkyTree(g, swords, sradius);
            Certificate c = certifySchottky(g, sub.ambient);
            json j;
            j["p"] = sp;
            j["certified"] = c.ok;
            j["certificate_notes"] = c.notes;
            if (!c.ok) {
                emitJson(j, out);
                return kValidation;
            }
            Ambient which = sreduction > 0 ? Ambient::Reduction : Ambient::DeltaPrime;
            SubTree used = sreduction > 0 ? reductionGraph(sub, sreduction) : sub;
            DualGraphData d = quotientDualGraph(g, used, which);
            if (sequalize) d = equalizeLoopLengths(d);
            if (sstabilize) d = stabilizeValenceTwo(d);
            j["subtree_size"] = sub.size();
            j["hull_grew"] = sub.grew;
            j["quotient_certified"] = d.certified;
            j["betti"] = bettiNumber(d.graph);
            j["graph"] = graphToJson(d.graph);
            j["generator_words"] = json::array();
            for (const auto& w : d.generatorWords) j["generator_words"].push_back(walkJson(d.graph, w));
            j["lengths"] = d.lengths;
            j["notes"] = d.notes;
            if (!sgraphOut.empty()) emitJson(graphToJson(d.graph), sgraphOut);
            emitJson(j, out);
            if (!d.certified) return kValidation;
        } else if (*ext) {
            ExtensionParams params{ee, ef};
            requireParams(params);
            if (!ematrix.empty()) {
                emit(writeMatrixCsv(extendEdgeMatrix(readMatrixCsv(readFile(ematrix)), ee)), out);
            } else if (!egraph.empty()) {
                Subdivision s = extendGraph(graphFromJson(loadJson(egraph)), params);
                json j;
                j["e"] = ee;
                j["f"] = ef;
                j["q_factor"] = "q^" + std::to_string(ef);
                j["graph"] = graphToJson(s.graph);
                j["chains"] = s.chain;
                emitJson(j, out);
            } else {
                throw std::invalid_argument("extend needs --matrix or --graph");
            }
        } else if (*sft) {
            ShiftSpace s = buildSFT(graphFromJson(loadJson(sfGraph)), sfq, parseAlphabet(sfAlphabet));
            FiltrationSpace f = filtrationData(s, sfN);
            std::ostringstream os;
            os << "n,theta,rank_F,theta_diff_plus_one,rank_Gr,kernel_delta\n";
            for (int n = 0; n <= sfN; ++n) {
                os << n << ',' << f.theta[n].get_str() << ',' << f.rankF(n) << ',';
                if (n > 0) os << Z(f.theta[n] - f.theta[n - 1] + 1).get_str();
                os << ',' << f.rankGr(n) << ',';
                if (n > 0) os << f.levels[n].kernelDelta;
                os << '\n';
            }
            emit(os.str(), out);
        } else if (*mea) {
            TreePatch t = buildTreePatch(PadicContext::make(mp), baseClass(mp), mradius);
            ShadowMeasure m = shadowMeasure(t);
            Walk w = patchWalk(t, mword);
            emit(toString(cylinderMeasure(m, w, mmarking)), out);
        } else if (*ck) {
            ShiftSpace s = buildSFT(graphFromJson(loadJson(ckGraph)), 2, parseAlphabet(ckAlphabet));
            CKReport r = checkCKRelations(buildOperators(filtrationData(s, ckN)));
            json j;
            j["N"] = ckN;
            j["alphabet"] = ckAlphabet;
            for (const auto& c : r.checks)
                j["relations"][c.name] = {{"pass", c.pass}, {"checked", c.checked}, {"clipped", c.clipped}, {"witness", c.witness}};
            j["cuntz_krieger"] = r.cuntzKriegerOk();
            emitJson(j, out);
            if (!r.cuntzKriegerOk()) return kTolerance;
        } else if (*dir) {
            DiracVariant v;
            if (dvariant == "plain") v = DiracVariant::Plain;
            else if (dvariant == "scaled") v = DiracVariant::Scaled;
            else throw std::invalid_argument("variant must be plain or scaled");
            DiracSpectrum d = diracSpectrum(v, dl, dq, dn);
            json j;
            j["variant"] = dvariant;
            j["l"] = dl;
            j["q"] = dq;
            j["unit"] = d.unit();
            j["spacing"] = d.spacing;
            j["spacing_constant"] = d.spacingConstant;
            j["levels"] = json::array();
            for (const auto& l : d.levels)
                j["levels"].push_back({{"sign", l.sign > 0 ? "+" : "-"}, {"level", l.level}, {"eigenvalue", l.eigenvalue}});
            emitJson(j, out);
        } else if (*eul) {
            std::vector<cplx> grid = !es.empty() ? std::vector<cplx>{parseComplex(es)} : !egrid.empty() ? parseGrid(egrid)
                                                                                                       : throw std::invalid_argument("euler needs --s or --s-grid");
            EulerFactor spec;
            if (emode == "split") {
                spec = EulerFactor::split(eq, eg2);
            } else if (emode == "foam") {
                if (elambdas.empty()) throw std::invalid_argument("foam mode needs --lambdas");
                spec = foamSpecFromJson(loadJson(elambdas)).eulerFactor();
            } else {
                throw std::invalid_argument("mode must be split or foam");
            }
            auto rows = verifyLocalFactorTheorem(spec, grid, el, etol);
            bool all = true;
            json j;
            j["mode"] = emode;
            j["q"] = spec.q;
            if (emode == "split") j["g"] = eg2;
            j["l"] = el;
            j["rows"] = rowsJson(rows, etol, all);
            j["pass"] = all;
            if (eformat == "csv") emit(rowsCsv(rows), out);
            else if (eformat == "json") emitJson(j, out);
            else throw std::invalid_argument("format must be json or csv");
            if (!all) return kTolerance;
        } else if (*foa) {
            FoamSpec spec = foamSpecFromJson(loadJson(fspec));
            FoamGraph fg = buildFoamGraph(spec, fdepth);
            ShiftSpace s = buildSFT(fg.graph, spec.q, Alphabet::Walks);
            int ell = 1;
            for (const auto& l : spec.perLambda)
                if (!l.loops.empty()) ell = static_cast<int>(l.loops.front().size());
            FiltrationSpace f = filtrationData(s, std::max(1, fn * ell - 1));
            FoamEmbedding e = foamEmbeddings(spec, fg, f, fn);
            json j;
            j["q"] = spec.q;
            j["ell"] = e.ell;
            j["graph"] = graphToJson(fg.graph);
            j["betti"] = bettiNumber(fg.graph);
            j["lambdas"] = json::array();
            for (std::size_t i = 0; i < e.perLambda.size(); ++i) {
                const auto& le = e.perLambda[i];
                json l;
                l["alpha"] = formatComplex(spec.perLambda[i].alpha);
                l["d"] = le.dGamma + le.dZero;
                l["d_gamma"] = le.dGamma;
                l["d_zero"] = le.dZero;
                l["rotation"] = le.rotation;
                for (const auto& [level, d] : le.dimGr) l["dim_gr"][std::to_string(level)] = d;
                for (const auto& [level, d] : le.dimF) l["dim_f"][std::to_string(level)] = d;
                j["lambdas"].push_back(l);
            }
            j["mutually_orthogonal"] = e.mutuallyOrthogonal;
            j["notes"] = e.notes;
            bool all = true;
            if (!fgrid.empty()) j["rows"] = rowsJson(verifyLocalFactorTheorem(spec.eulerFactor(), parseGrid(fgrid), e.ell), 1e-8, all);
            emitJson(j, out);
            if (!all) return kTolerance;
        } else if (*st) {
            auto rs = runAcceptance();
            std::ostringstream os;
            for (const auto& r : rs) os << formatResult(r) << '\n';
            emit(os.str(), out);
            return acceptanceStatus(rs, std::set<int>(stRed.begin(), stRed.end())) == 0 ? kOk : kTolerance;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}
