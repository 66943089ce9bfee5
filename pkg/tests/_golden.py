"""Printed comparison table, transcribed cell by cell: (states, calls) per dataset."""

DATASETS = ("24Game", "Crossword", "BlocksWorld", "PrOntoQA")

_ROWS = {
    "IO":         ["0.02%", "1362", "4e-9%", "20",   "0.5%",  "502",  "4%",     "4000"],
    "CoT":        ["0.02%", "1362", "4e-9%", "20",   "0.5%",  "502",  "4%",     "4000"],
    "ReAct":      ["0.07%", "4086", "4e-8%", "200",  "7.8%",  "8032", "24.6%",  "24K"],
    "ReWOO":      ["0.07%", "4086", "4e-8%", "200",  "7.8%",  "8032", "24.6%",  "24K"],
    "RAP":        ["3.3%",  "245K", "2e-6%", "12K",  "388%",  "482K", "1229%",  "1.44M"],
    "ToT":        ["1.6%",  "102K", "1e-6%", "5K",   "194%",  "201K", "615%",   "600K"],
    "GoT":        ["0.3%",  "20K",  "2e-7%", "1K",   "39%",   "40K",  "122%",   "120K"],
    "Reflection": ["0.7%",  "68K",  "4e-7%", "2.4K", "77.6%", "90K",  "245%",   "320K"],
    "LATS":       ["3.3%",  "286K", "2e-6%", "14K",  "388%",  "562K", "1229%",  "1.68M"],
    "ToS (ours)": ["27.0%", "2.2",  "3e-4%", "3.8",  "125%",  "3.8",  "175%",   "2.6"],
}

GOLDEN = {
    (approach, d): (cells[2 * i], cells[2 * i + 1])
    for approach, cells in _ROWS.items()
    for i, d in enumerate(DATASETS)
}
