#include <doctest.h>

#include <map>
#include <sstream>

#include "commands.hpp"
#include "hwasym/asym_neg.hpp"
#include "hwasym/asym_pos.hpp"

using namespace hwasym;
using namespace hwasym::cli;

namespace {

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    throw std::runtime_error("no column " + name);
}

double num(const Cell& c) { return std::holds_alternative<double>(c) ? std::get<double>(c) : double(std::get<long>(c)); }

Table find(const std::vector<std::pair<std::string, Table>>& d, const std::string& name) {
    for (const auto& [n, t] : d)
        if (n == name) return t;
    throw std::runtime_error("no dataset " + name);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("value lists") {
    CHECK(parse_values("1.5") == std::vector<double>{1.5});
    CHECK(parse_values("1,2,-3") == std::vector<double>{1, 2, -3});
    CHECK(parse_values("0:1:5") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK_THROWS_AS(parse_values("0:1"), UsageError);
    CHECK_THROWS_AS(parse_values("a"), UsageError);
}

TEST_CASE("density row is labelled") {
    DensityArgs a;
    a.beta = 8;
    a.X0 = 1;
    a.X = {-0.5};
    a.t = {1.5};
    Table t = cmd_density(a);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::get<std::string>(t.rows[0][column(t, "regime")]) == "I");
    a.method = "inversion";
    CHECK_THROWS_AS(cmd_density(a), UsageError);
    a.method = "nope";
    CHECK_THROWS_AS(cmd_density(a), UsageError);
}

TEST_CASE("output is deterministic") {
    DensityArgs a;
    a.beta = 3;
    a.X0 = 1;
    a.X = {-0.4, 0.2};
    a.t = {1.0};
    a.method = "mc";
    a.paths = 5000;
    std::ostringstream s1, s2;
    cmd_density(a).write(s1, "json");
    cmd_density(a).write(s2, "json");
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("\"schema\"") != std::string::npos);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(json_cell(hwasym::nan) == "null");
    std::ostringstream os;
    Table t;
    t.schema = "s";
    t.columns = {"a", "b"};
    t.add({1.0, std::string("x,y")});
    t.write_csv(os);
    CHECK(os.str() == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("figure 1 has t1 = t2 at the origin") {
    Table t = find(figure_data(1), "figure1.csv");
    std::size_t cX = column(t, "X"), c1 = column(t, "t1"), c2 = column(t, "t2");
    int seen = 0;
    for (const auto& r : t.rows)
        if (num(r[cX]) == 0.0) {
            CHECK(std::fabs(num(r[c1]) - num(r[c2])) < 1e-9);
            ++seen;
        }
    CHECK(seen == 3);
}

TEST_CASE("figure 2 fluid curve lies below the others") {
    Table t = find(figure_data(2), "figure2.csv");
    std::size_t cf = column(t, "t_fluid");
    for (const auto& r : t.rows)
        for (const char* c : {"t_star", "t_c", "t_d"}) {
            double v = num(r[column(t, c)]);
            if (std::isfinite(v)) CHECK(num(r[cf]) < v);
        }
}

TEST_CASE("figure 7 rays touch t_plus") {
    auto d = figure_data(7);
    Table rays = find(d, "figure7_rays.csv");
    Table curve = find(d, "figure7_curves.csv");
    std::size_t rX = column(rays, "X"), rt = column(rays, "t"), rid = column(rays, "ray");
    std::size_t cX = column(curve, "X"), ct = column(curve, "t_plus");
    double step = num(curve.rows[1][cX]) - num(curve.rows[0][cX]);
    std::map<long, double> best;
    for (const auto& r : rays.rows) {
        double X = num(r[rX]), t = num(r[rt]);
        if (X > 3.0) continue;
        double d2 = inf;
        for (const auto& c : curve.rows) d2 = std::min(d2, std::hypot(num(c[cX]) - X, num(c[ct]) - t));
        long id = std::get<long>(r[rid]);
        best[id] = best.count(id) ? std::min(best[id], d2) : d2;
    }
    int touching = 0;
    for (const auto& [id, d2] : best)
        if (d2 < step) ++touching;
    CHECK(best.size() == 30);
    CHECK(touching == static_cast<int>(best.size()));
}

TEST_CASE("every figure has data") {
    for (int n = 1; n <= 8; ++n) {
        auto d = figure_data(n);
        REQUIRE(!d.empty());
        for (const auto& [name, t] : d) CHECK(!t.rows.empty());
    }
    CHECK_THROWS_AS(figure_data(9), UsageError);
}

}
