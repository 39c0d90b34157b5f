#include "beamplot/svg_render.hpp"
#include "support/oracles.hpp"
#include "support/svg_inspect.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

using namespace beamplot;
namespace bt = beamplot::testing;

namespace {

PublicationRecord paper(std::string ut, int year, std::int64_t tc)
{
    return {.ut = std::move(ut), .pub_year = year, .times_cited = tc};
}

BeamplotModel model_of(const std::vector<PublicationRecord>& records, ValueMode mode = ValueMode::Raw)
{
    return build_model(records, mode, {2020});
}

} // namespace

TEST(RenderBeamplot, SinglePaperCounts)
{
    const auto svg = render_beamplot(model_of({paper("x", 2015, 4)}));
    const auto c = bt::inspect_svg(svg);
    EXPECT_EQ(c.count("paper-point"), 1u);
    EXPECT_EQ(c.count("beam"), 0u);
    EXPECT_EQ(c.count("year-median"), 1u);
    EXPECT_EQ(c.count("pub-count"), 1u);
    EXPECT_EQ(c.count("value-median-line"), 1u);
    EXPECT_EQ(c.count("count-median-line"), 1u);
    EXPECT_EQ(c.dashed, 2u);
}

TEST(RenderBeamplot, ThreePapersTwoYears)
{
    const auto svg = render_beamplot(model_of({paper("a", 2010, 3), paper("b", 2010, 5), paper("c", 2011, 2)}));
    const auto c = bt::inspect_svg(svg);
    EXPECT_EQ(c.root_count, 1u);
    EXPECT_TRUE(c.root_is_svg);
    EXPECT_TRUE(c.has_view_box);
    EXPECT_EQ(c.count("paper-point"), 3u);
    EXPECT_EQ(c.count("beam"), 1u);
    EXPECT_EQ(c.count("year-median"), 2u);
    EXPECT_EQ(c.count("pub-count"), 2u);
    EXPECT_EQ(c.year_labels, 2u);
    EXPECT_NE(svg.find("<!-- beamplot census_year=2020 mode=raw -->"), std::string::npos);
}

TEST(RenderBeamplot, EqualValuesDrawNoBeam)
{
    const auto c = bt::inspect_svg(render_beamplot(model_of({paper("a", 2010, 3), paper("b", 2010, 3)})));
    EXPECT_EQ(c.count("beam"), 0u);
    EXPECT_EQ(c.count("paper-point"), 2u);
}

TEST(RenderBeamplot, CoincidentDiamondsAreStacked)
{
    const auto svg = render_beamplot(model_of({paper("a", 2010, 3), paper("b", 2010, 3), paper("c", 2010, 3)}));
    std::set<std::string> paths;
    std::size_t pos = 0;
    while ((pos = svg.find("class=\"paper-point\" d=\"", pos)) != std::string::npos) {
        pos += 23;
        paths.insert(svg.substr(pos, svg.find('"', pos) - pos));
    }
    EXPECT_EQ(paths.size(), 3u);
}

TEST(RenderBeamplot, GapYearsGetLabelsAndCircles)
{
    const auto c = bt::inspect_svg(render_beamplot(model_of({paper("a", 2010, 3), paper("b", 2014, 1)})));
    EXPECT_EQ(c.year_labels, 5u);
    EXPECT_EQ(c.count("pub-count"), 5u);
    EXPECT_EQ(c.count("year-median"), 2u);
}

TEST(RenderBeamplot, Deterministic)
{
    const auto m = model_of({paper("a", 2010, 3), paper("b", 2010, 5), paper("c", 2011, 2)}, ValueMode::AgeWeighted);
    EXPECT_EQ(render_beamplot(m), render_beamplot(m));
}

TEST(RenderBeamplot, DegenerateCanvas)
{
    const auto m = model_of({paper("x", 2015, 4)});
    RenderConfig config;
    config.width_px = 100; // margins alone take 120
    try {
        render_beamplot(m, config);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateCanvas);
    }
    config = {};
    config.height_px = 140;
    EXPECT_THROW(render_beamplot(m, config), Error);
}

TEST(RenderBeamplot, AllZeroCitations)
{
    const auto c = bt::inspect_svg(render_beamplot(model_of({paper("a", 2010, 0), paper("b", 2011, 0)})));
    EXPECT_EQ(c.count("paper-point"), 2u);
    EXPECT_EQ(c.dashed, 2u);
}

TEST(Scales, Anchors)
{
    const auto m = model_of({paper("a", 2010, 3), paper("b", 2010, 40), paper("c", 2013, 2)});
    const RenderConfig config;
    const auto area = plot_area(config);
    EXPECT_DOUBLE_EQ(value_to_x(0.0, m, config), area.left);
    EXPECT_DOUBLE_EQ(value_to_x(40.0, m, config), area.right);
    EXPECT_NEAR(value_to_x(20.0, m, config), (area.left + area.right) / 2, 0.5);
    EXPECT_DOUBLE_EQ(count_to_x(0, m, config), area.left);
    EXPECT_DOUBLE_EQ(count_to_x(2, m, config), area.right);
    EXPECT_LT(year_to_y(2010, m, config), year_to_y(2011, m, config));
    EXPECT_GT(year_to_y(2010, m, config), area.top);
    EXPECT_LT(year_to_y(2013, m, config), area.bottom);
    // even spacing
    EXPECT_DOUBLE_EQ(year_to_y(2012, m, config) - year_to_y(2011, m, config),
                     year_to_y(2011, m, config) - year_to_y(2010, m, config));
}

TEST(Scales, OutOfRange)
{
    const auto m = model_of({paper("a", 2010, 3), paper("b", 2011, 8)});
    const RenderConfig config;
    for (auto f : {+[](const BeamplotModel& m, const RenderConfig& c) { value_to_x(-0.5, m, c); },
                   +[](const BeamplotModel& m, const RenderConfig& c) { value_to_x(8.5, m, c); },
                   +[](const BeamplotModel& m, const RenderConfig& c) { count_to_x(2, m, c); },
                   +[](const BeamplotModel& m, const RenderConfig& c) { year_to_y(2009, m, c); },
                   +[](const BeamplotModel& m, const RenderConfig& c) { year_to_y(2012, m, c); }}) {
        try {
            f(m, config);
            ADD_FAILURE() << "no throw";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
        }
    }
}

TEST(Scales, Monotone)
{
    std::mt19937 rng(31);
    const auto m = model_of(bt::random_records(rng, 60));
    const RenderConfig config;
    const double max = to_double(m.max_value());
    std::uniform_real_distribution<double> v(0.0, max);
    for (int i = 0; i < 1000; ++i) {
        double a = v(rng);
        double b = v(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        EXPECT_LT(value_to_x(a, m, config), value_to_x(b, m, config));
    }
    for (std::size_t i = 1; i < m.rows.size(); ++i) {
        EXPECT_LT(year_to_y(m.rows[i - 1].year, m, config), year_to_y(m.rows[i].year, m, config));
    }
}

TEST(AxisTicks, FinestNiceStepWithinLimit)
{
    EXPECT_EQ(axis_ticks(4, 8), (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(axis_ticks(10, 8), (std::vector<std::int64_t>{0, 2, 4, 6, 8, 10}));
    EXPECT_EQ(axis_ticks(37, 8), (std::vector<std::int64_t>{0, 5, 10, 15, 20, 25, 30, 35}));
    EXPECT_EQ(axis_ticks(400, 8), (std::vector<std::int64_t>{0, 100, 200, 300, 400}));
    EXPECT_EQ(axis_ticks(0.5, 8), (std::vector<std::int64_t>{0}));
    for (double max : {1.0, 7.0, 99.0, 1234.0, 55555.0}) {
        const auto ticks = axis_ticks(max, 6);
        EXPECT_LE(ticks.size(), 6u);
        EXPECT_LE(static_cast<double>(ticks.back()), max);
    }
}

TEST(RenderBeamplot, RandomModelsKeepElementContract)
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mode = trial % 2 ? ValueMode::AgeWeighted : ValueMode::Raw;
        const auto m = model_of(bt::random_records(rng), mode);
        const auto svg = render_beamplot(m);
        const auto c = bt::inspect_svg(svg);
        std::size_t non_empty = 0;
        std::size_t beams = 0;
        for (const auto& row : m.rows) {
            non_empty += row.paper_count > 0;
            beams += row.paper_count >= 2 && row.min_value != row.max_value;
        }
        EXPECT_EQ(c.count("paper-point"), m.total_papers);
        EXPECT_EQ(c.count("year-median"), non_empty);
        EXPECT_EQ(c.count("pub-count"), m.rows.size());
        EXPECT_EQ(c.count("beam"), beams);
        EXPECT_EQ(c.year_labels, m.rows.size());
        EXPECT_EQ(c.dashed, 2u);
        EXPECT_TRUE(bt::coordinates_have_two_decimals_max(svg));
    }
}

TEST(FormatCoord, TwoDecimalsTrimmed)
{
    EXPECT_EQ(format_coord(12.0), "12");
    EXPECT_EQ(format_coord(12.5), "12.5");
    EXPECT_EQ(format_coord(12.346), "12.35");
    EXPECT_EQ(format_coord(-0.001), "0");
    EXPECT_EQ(format_coord(80.004), "80");
}
