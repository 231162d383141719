namespace foundry {

// Rule table: one row per chart type with its accepted attribute
// combinations. "first_categorical=2" marks the rows whose first categorical
// attribute must contain exactly two distinct values.
const char* builtin_registry_json() {
    return R"JSON([
{"type":"Vertical Bar Chart","signatures":["C1+N1"],"rendered":true},
{"type":"Vertical Stacked Bar Chart","signatures":["C2+N1"],"rendered":true},
{"type":"Vertical Grouped Bar Chart","signatures":["C2+N1"],"rendered":true},
{"type":"Horizontal Bar Chart","signatures":["C1+N1"],"rendered":true},
{"type":"Horizontal Stacked Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Horizontal Grouped Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Radial Bar Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Radial Stacked Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Radial Grouped Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Circular Bar Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Circular Stacked Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Circular Grouped Bar Chart","signatures":["C2+N1"],"rendered":false},
{"type":"Pictorial Percentage Bar Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Histogram","signatures":["C1+N1","T1+N1"],"rendered":false},
{"type":"Lollipop Chart","signatures":["C1+N1"],"rendered":true},
{"type":"Dot chart","signatures":["C1+N1","C2+N1"],"rendered":false},
{"type":"Diverging Bar Chart","signatures":["C2+N1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Vertical Bar Chart With Circle","signatures":["C1+N2"],"rendered":false},
{"type":"Horizontal Bar Chart With Circle","signatures":["C1+N2"],"rendered":false},
{"type":"Vertical Dot Bar Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Horizontal Dot Bar Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Dumbbell Plot","signatures":["T1+N1+C1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Span Chart","signatures":["C1+N2"],"rendered":false},
{"type":"Bump Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Line Graph","signatures":["T1+N1","T1+N1+C1"],"rendered":true},
{"type":"Spline Graph","signatures":["T1+N1","T1+N1+C1"],"rendered":true},
{"type":"Stepped Line Graph","signatures":["T1+N1","T1+N1+C1"],"rendered":false},
{"type":"Slope Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Small Multiples of Line Graphs","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Small Multiples of Spline Graphs","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Small Multiples of Stepped Line Graphs","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Area Chart","signatures":["T1+N1","T1+N1+C1"],"rendered":true},
{"type":"Spline Area Chart","signatures":["T1+N1","T1+N1+C1"],"rendered":false},
{"type":"Layered Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Layered Spline Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Range Area Chart","signatures":["T1+N1+C1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Stacked Area Chart","signatures":["T1+N1+C1"],"rendered":true},
{"type":"Radial Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Radial Spline Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Radial Layered Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Radial Layered Spline Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Radial Range Area Chart","signatures":["T1+N1+C1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Radial Stacked Area Chart","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Diverging Area Chart","signatures":["T1+N1+C1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Diverging Spline Area Chart","signatures":["T1+N1+C1"],"constraints":"first_categorical=2","rendered":false},
{"type":"Small Multiples of Area Charts","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Small Multiples of Spline Area Charts","signatures":["T1+N1+C1"],"rendered":false},
{"type":"Pie Chart","signatures":["C1+N1"],"rendered":true},
{"type":"Donut Chart","signatures":["C1+N1"],"rendered":true},
{"type":"Semicircle Pie Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Semicircle Donut Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Rose Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Small Multiples of Pie Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Small Multiples of Donut Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Small Multiples of Semicircle Pie Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Small Multiples of Semicircle Donut Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Small Multiples of Rose Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Radar Line Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Radar Spline Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Small Multiples of Radar Line Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Small Multiples of Radar Spline Charts","signatures":["C2+N1"],"rendered":false},
{"type":"Proportional Area Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Scatterplot","signatures":["C1+N2"],"rendered":true},
{"type":"Grouped Scatterplot","signatures":["C2+N2"],"rendered":false},
{"type":"Bubble Chart","signatures":["C1+N2"],"rendered":true},
{"type":"Heatmap","signatures":["N2"],"rendered":false},
{"type":"Waffle Chart","signatures":["N1"],"rendered":true},
{"type":"Small Multiples of Waffle Charts","signatures":["C1+N1"],"rendered":false},
{"type":"Alluvial Diagram","signatures":["C1+N1+T1","C2+N1"],"rendered":false},
{"type":"Gauge Chart","signatures":["N1"],"rendered":false},
{"type":"Small Multiples of Gauge Charts","signatures":["C1+N1"],"rendered":false},
{"type":"Funnel Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Pyramid Chart","signatures":["C1+N1"],"rendered":false},
{"type":"Treemap","signatures":["C2+N1"],"rendered":false},
{"type":"Voronoi Treemap","signatures":["C2+N1"],"rendered":false}
])JSON";
}

// Variation catalog for the rendered subset. Axes pick renderer behaviors:
// bar_corner -> rounded marks, value_label_position -> labels outside marks,
// outline_style -> stroked marks on light fill, icon_placement -> pictogram
// (placeholder glyph when no icon repository is configured),
// orientation_flourish -> rotated start angle / mirrored sweep.
const char* builtin_variations_json() {
    return R"JSON([
{"id":"vertical-bar-plain","parent":"Vertical Bar Chart","axes":[]},
{"id":"vertical-bar-rounded","parent":"Vertical Bar Chart","axes":["bar_corner"]},
{"id":"vertical-bar-labeled","parent":"Vertical Bar Chart","axes":["value_label_position"]},
{"id":"vertical-bar-icon","parent":"Vertical Bar Chart","axes":["icon_placement"]},
{"id":"horizontal-bar-plain","parent":"Horizontal Bar Chart","axes":[]},
{"id":"horizontal-bar-rounded","parent":"Horizontal Bar Chart","axes":["bar_corner"]},
{"id":"horizontal-bar-labeled","parent":"Horizontal Bar Chart","axes":["value_label_position"]},
{"id":"horizontal-bar-icon","parent":"Horizontal Bar Chart","axes":["icon_placement"]},
{"id":"stacked-bar-plain","parent":"Vertical Stacked Bar Chart","axes":[]},
{"id":"stacked-bar-rounded","parent":"Vertical Stacked Bar Chart","axes":["bar_corner"]},
{"id":"stacked-bar-outline","parent":"Vertical Stacked Bar Chart","axes":["outline_style"]},
{"id":"grouped-bar-plain","parent":"Vertical Grouped Bar Chart","axes":[]},
{"id":"grouped-bar-rounded","parent":"Vertical Grouped Bar Chart","axes":["bar_corner"]},
{"id":"grouped-bar-labeled","parent":"Vertical Grouped Bar Chart","axes":["value_label_position"]},
{"id":"line-plain","parent":"Line Graph","axes":[]},
{"id":"line-markers","parent":"Line Graph","axes":["outline_style"]},
{"id":"line-labeled","parent":"Line Graph","axes":["value_label_position"]},
{"id":"spline-plain","parent":"Spline Graph","axes":[]},
{"id":"spline-markers","parent":"Spline Graph","axes":["outline_style"]},
{"id":"area-plain","parent":"Area Chart","axes":[]},
{"id":"area-outline","parent":"Area Chart","axes":["outline_style"]},
{"id":"area-labeled","parent":"Area Chart","axes":["value_label_position"]},
{"id":"stacked-area-plain","parent":"Stacked Area Chart","axes":[]},
{"id":"stacked-area-outline","parent":"Stacked Area Chart","axes":["outline_style"]},
{"id":"pie-plain","parent":"Pie Chart","axes":[]},
{"id":"pie-outline","parent":"Pie Chart","axes":["outline_style"]},
{"id":"pie-labeled","parent":"Pie Chart","axes":["value_label_position"]},
{"id":"pie-rotated","parent":"Pie Chart","axes":["orientation_flourish"]},
{"id":"donut-plain","parent":"Donut Chart","axes":[]},
{"id":"donut-outline","parent":"Donut Chart","axes":["outline_style"]},
{"id":"donut-labeled","parent":"Donut Chart","axes":["value_label_position"]},
{"id":"scatter-plain","parent":"Scatterplot","axes":[]},
{"id":"scatter-outline","parent":"Scatterplot","axes":["outline_style"]},
{"id":"scatter-labeled","parent":"Scatterplot","axes":["value_label_position"]},
{"id":"bubble-plain","parent":"Bubble Chart","axes":[]},
{"id":"bubble-outline","parent":"Bubble Chart","axes":["outline_style"]},
{"id":"lollipop-plain","parent":"Lollipop Chart","axes":[]},
{"id":"lollipop-labeled","parent":"Lollipop Chart","axes":["value_label_position"]},
{"id":"lollipop-icon","parent":"Lollipop Chart","axes":["icon_placement"]},
{"id":"waffle-plain","parent":"Waffle Chart","axes":[]},
{"id":"waffle-rounded","parent":"Waffle Chart","axes":["bar_corner"]},
{"id":"waffle-labeled","parent":"Waffle Chart","axes":["value_label_position"]}
])JSON";
}

} // namespace foundry
