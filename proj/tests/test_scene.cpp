#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "foundry/color.hpp"
#include "foundry/errors.hpp"
#include "foundry/scene.hpp"
#include "foundry/svgdom.hpp"
#include "foundry/tabular.hpp"

using namespace foundry;

namespace {

ChartScene render(const std::string& csv, const std::string& type,
                  const std::string& variation = "", std::vector<std::string> axes = {}) {
    DataTable t = load_table_text(csv);
    ChartSpec spec;
    spec.type_name = type;
    spec.variation_id = variation;
    spec.style_axes = std::move(axes);
    spec.bindings = default_bindings(t, type);
    return render_chart(t, spec, builtin_palettes()[0], 520, 390);
}

std::vector<const SceneElement*> data_leaves(const ChartScene& s) {
    std::vector<const SceneElement*> out;
    for_each_leaf(s.root, [&](const SceneElement& e) {
        if (e.data_row >= 0) out.push_back(&e);
    });
    return out;
}

const std::string kCatCsv = "City,Pop\nOslo,5\nRiga,9\nBern,3\nCork,7\n";

} // namespace

TEST_CASE("mark count law: one element per row") {
    for (const char* type :
         {"Vertical Bar Chart", "Horizontal Bar Chart", "Lollipop Chart"}) {
        ChartScene s = render(kCatCsv, type);
        CHECK_MESSAGE(data_leaves(s).size() == 4, type);
        CHECK(s.data_element_index.size() == 4);
        for (const auto& ids : s.data_element_index) CHECK(!ids.empty());
    }
    ChartScene sc = render("X,Y\n1,4\n2,6\n3,5\n", "Scatterplot");
    CHECK(data_leaves(sc).size() == 3);
}

TEST_CASE("mark count law: stacked bars are groups x stacks") {
    ChartScene s = render("Group,Series,Val\na,u,1\na,v,2\nb,u,3\nb,v,4\nc,u,5\nc,v,6\n",
                          "Vertical Stacked Bar Chart");
    CHECK(data_leaves(s).size() == 6); // 3 groups x 2 stacks
}

TEST_CASE("mark count law: pie arcs per distinct category") {
    ChartScene s = render(kCatCsv, "Pie Chart");
    auto leaves = data_leaves(s);
    CHECK(leaves.size() == 4);
    double sweep = 0;
    for (const auto* e : leaves) {
        const auto* arc = std::get_if<ArcGeom>(&e->geometry);
        REQUIRE(arc);
        sweep += arc->sweep_deg;
    }
    CHECK(std::fabs(sweep - 360.0) < 1e-6);
}

TEST_CASE("bar lengths proportional to values") {
    ChartScene s = render(kCatCsv, "Vertical Bar Chart");
    std::vector<double> heights(4, 0);
    for (const auto* e : data_leaves(s)) {
        const auto* r = std::get_if<RectGeom>(&e->geometry);
        REQUIRE(r);
        heights[static_cast<std::size_t>(e->data_row)] = r->h;
    }
    const double vals[4] = {5, 9, 3, 7};
    for (int i = 1; i < 4; ++i) {
        double got = heights[static_cast<std::size_t>(i)] / heights[0];
        double want = vals[i] / vals[0];
        CHECK(std::fabs(got - want) <= 0.005 * want);
    }
}

TEST_CASE("role classes cover the benchmark set") {
    ChartScene s = render("Group,Series,Val\na,u,1\na,v,2\nb,u,3\nb,v,4\n",
                          "Vertical Grouped Bar Chart");
    std::string svg = serialize_svg(s, builtin_palettes()[0]);
    // collect every class= attribute value
    std::set<std::string> classes;
    std::size_t pos = 0;
    while ((pos = svg.find("class=\"", pos)) != std::string::npos) {
        pos += 7;
        classes.insert(svg.substr(pos, svg.find('"', pos) - pos));
    }
    const std::set<std::string> allowed = {"title", "image", "legend", "axis"};
    for (const auto& c : classes) CHECK(allowed.count(c) == 1);
    CHECK(classes.count("axis") == 1);
    CHECK(classes.count("legend") == 1); // grouped bars need a series legend
    CHECK(svg.find("<tspan") == std::string::npos);
}

TEST_CASE("data elements stay inside the canvas") {
    for (const char* type : {"Vertical Bar Chart", "Pie Chart", "Line Graph", "Waffle Chart",
                             "Bubble Chart", "Area Chart"}) {
        std::string csv;
        if (std::string(type) == "Line Graph" || std::string(type) == "Area Chart")
            csv = "Year,V\n2001,4\n2002,9\n2003,6\n";
        else if (std::string(type) == "Bubble Chart")
            csv = "X,Y,Z\n1,5,2\n4,2,6\n7,8,3\n";
        else if (std::string(type) == "Waffle Chart")
            csv = "Share\n62\n";
        else
            csv = kCatCsv;
        ChartScene s = render(csv, type);
        Rect bounds = s.bounds(FontMetrics::builtin());
        CHECK(bounds.x >= -1e-6);
        CHECK(bounds.y >= -1e-6);
        CHECK(bounds.x2() <= s.width + 1e-6);
        CHECK(bounds.y2() <= s.height + 1e-6);
    }
}

TEST_CASE("data marks avoid axis label boxes") {
    ChartScene s = render(kCatCsv, "Vertical Bar Chart");
    const FontMetrics& fm = FontMetrics::builtin();
    std::vector<Rect> labels;
    std::function<void(const SceneElement&)> walk = [&](const SceneElement& el) {
        if (el.is_group()) {
            for (const auto& c : el.children) walk(c);
            return;
        }
        if (el.role == Role::Axis && std::holds_alternative<TextGeom>(el.geometry))
            labels.push_back(el.bbox(fm));
    };
    walk(s.root);
    REQUIRE(!labels.empty());
    for (const auto* e : data_leaves(s)) {
        Rect b = e->bbox(fm);
        for (const auto& l : labels) CHECK(b.intersection_area(l) == 0.0);
    }
}

TEST_CASE("renderer is deterministic") {
    ChartScene a = render(kCatCsv, "Donut Chart");
    ChartScene b = render(kCatCsv, "Donut Chart");
    CHECK(serialize_svg(a, builtin_palettes()[0]) == serialize_svg(b, builtin_palettes()[0]));
}

TEST_CASE("unsupported type and bad bindings throw") {
    try {
        render(kCatCsv, "Histogram"); // registry row exists but no renderer
        FAIL("rendered an unimplemented type");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedChartType);
    }
    DataTable t = load_table_text(kCatCsv);
    ChartSpec spec;
    spec.type_name = "Scatterplot"; // needs two numeric bindings
    spec.bindings = default_bindings(t, spec.type_name);
    try {
        render_chart(t, spec, builtin_palettes()[0], 400, 300);
        FAIL("rendered with missing bindings");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EncodingMismatch);
    }
}

TEST_CASE("nice ticks stay between 4 and 7") {
    for (double hi : {1.0, 3.0, 7.0, 12.0, 55.0, 97.0, 1234.0, 0.04}) {
        TickSpec ts = nice_ticks(0, hi, true);
        CHECK(ts.ticks.size() >= 4);
        CHECK(ts.ticks.size() <= 7);
        CHECK(ts.lo <= 0);
        CHECK(ts.hi >= hi - 1e-9);
        for (std::size_t i = 1; i < ts.ticks.size(); ++i)
            CHECK(ts.ticks[i] > ts.ticks[i - 1]);
    }
    TickSpec neg = nice_ticks(-20, 35, true);
    CHECK(neg.lo <= -20);
    CHECK(neg.hi >= 35);
}

TEST_CASE("builtin palettes are discriminable") {
    const auto& pals = builtin_palettes();
    CHECK(pals.size() >= 20);
    for (const auto& p : pals) {
        REQUIRE(!p.colors.empty());
        for (std::size_t i = 1; i < p.colors.size(); ++i)
            CHECK(ciede2000(p.colors[i - 1], p.colors[i]) >= 10.0);
    }
}

TEST_CASE("palette supplementation keeps the invariant") {
    Palette base = builtin_palettes()[0];
    Palette big = supplement_palette(base, 12);
    REQUIRE(big.colors.size() >= 12);
    for (std::size_t i = 0; i < base.colors.size(); ++i)
        CHECK(big.colors[i] == base.colors[i]);
    for (std::size_t i = 1; i < big.colors.size(); ++i)
        CHECK(ciede2000(big.colors[i - 1], big.colors[i]) >= 10.0);
}

TEST_CASE("text color adapts to the background") {
    Palette light;
    light.background = {255, 255, 255};
    Palette dark;
    dark.background = {20, 20, 30};
    CHECK(light.text_color().r < 128);
    CHECK(dark.text_color().r > 128);
}

TEST_CASE("default bindings by column kind") {
    DataTable t = load_table_text("Year,City,Rate\n2001,a,4\n2002,b,6\n");
    EncodingBindings b = default_bindings(t, "Line Graph");
    CHECK(b.temporal_col == 0);
    CHECK(b.value_col == 2);
    DataTable t2 = load_table_text("X,Y\n1,5\n2,8\n");
    EncodingBindings b2 = default_bindings(t2, "Scatterplot");
    CHECK(b2.value_col == 0);
    CHECK(b2.value2_col == 1);
}
