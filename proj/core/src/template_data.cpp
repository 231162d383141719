namespace foundry {

// 12 curated layout templates. Element-set shapes are distinct so every
// template is reachable; ids sort stably for tie-breaks.
const char* builtin_templates_json() {
    return R"JSON([
{
  "id": "classic-stack",
  "slots": [
    {"role": "title", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 3},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2}
  ]
},
{
  "id": "subtitle-stack",
  "slots": [
    {"role": "title", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 3},
    {"role": "subtitle", "anchor": "top-center", "size_range": [0.0, 0.12], "z": 4},
    {"role": "chart", "anchor": "bottom-center", "size_range": [0.15, 0.9], "z": 2}
  ]
},
{
  "id": "banner-note",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2},
    {"role": "footnote", "anchor": "bottom-left", "size_range": [0.0, 0.08], "z": 5}
  ]
},
{
  "id": "editorial",
  "slots": [
    {"role": "title", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 3},
    {"role": "subtitle", "anchor": "top-center", "size_range": [0.0, 0.12], "z": 4},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2},
    {"role": "footnote", "anchor": "bottom-center", "size_range": [0.0, 0.08], "z": 5}
  ]
},
{
  "id": "hero-right",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "chart", "anchor": "center-left", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "center-right", "size_range": [0.0, 0.15], "z": 1}
  ],
  "overlap": [[1, 2]]
},
{
  "id": "compact-card",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "subtitle", "anchor": "top-left", "size_range": [0.0, 0.12], "z": 4},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "top-right", "size_range": [0.0, 0.15], "z": 1}
  ]
},
{
  "id": "footer-brand",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "bottom-right", "size_range": [0.0, 0.15], "z": 1},
    {"role": "footnote", "anchor": "bottom-left", "size_range": [0.0, 0.08], "z": 5}
  ]
},
{
  "id": "full-story",
  "slots": [
    {"role": "title", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 3},
    {"role": "subtitle", "anchor": "top-center", "size_range": [0.0, 0.12], "z": 4},
    {"role": "chart", "anchor": "center-right", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "center-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "footnote", "anchor": "bottom-center", "size_range": [0.0, 0.08], "z": 5}
  ]
},
{
  "id": "duo-icons",
  "slots": [
    {"role": "title", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 3},
    {"role": "image", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "image", "anchor": "top-right", "size_range": [0.0, 0.15], "z": 1},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2}
  ]
},
{
  "id": "split-feature",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "subtitle", "anchor": "top-left", "size_range": [0.0, 0.12], "z": 4},
    {"role": "chart", "anchor": "center-right", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "center-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "image", "anchor": "bottom-left", "size_range": [0.0, 0.15], "z": 1}
  ]
},
{
  "id": "icon-column",
  "slots": [
    {"role": "title", "anchor": "top-right", "size_range": [0.0, 0.15], "z": 3},
    {"role": "chart", "anchor": "center-right", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "image", "anchor": "center-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "image", "anchor": "bottom-left", "size_range": [0.0, 0.15], "z": 1}
  ]
},
{
  "id": "gallery-footer",
  "slots": [
    {"role": "title", "anchor": "top-left", "size_range": [0.0, 0.15], "z": 3},
    {"role": "image", "anchor": "top-center", "size_range": [0.0, 0.15], "z": 1},
    {"role": "image", "anchor": "top-right", "size_range": [0.0, 0.15], "z": 1},
    {"role": "chart", "anchor": "center", "size_range": [0.15, 0.9], "z": 2},
    {"role": "image", "anchor": "center-left", "size_range": [0.0, 0.15], "z": 1},
    {"role": "footnote", "anchor": "bottom-center", "size_range": [0.0, 0.08], "z": 5}
  ]
}
])JSON";
}

} // namespace foundry
