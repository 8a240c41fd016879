"""Published removal counts for open-scivis volumes.

Each entry: (dataset, isovalue, active cubes in thousands, total components of
the superlevel graph, {mode: [(removed, modified) at sizes 1, 5, 10, 20, 50]}).
The sublevel rows give removed/modified only; their percentages in the
source were taken against the superlevel total.
"""

THRESHOLDS = (1, 5, 10, 20, 50)

ALIASES = {
    "abdominal_stent": ("abdominal_stent", "stent"),
    "aneurysm": ("aneurysm", "aneurism"),
    "bonsai": ("bonsai",),
    "carp": ("carp",),
    "colon_prone": ("colon_prone",),
    "colon_supine": ("colon_supine",),
    "lobster": ("lobster",),
    "MRIwoman": ("MRIwoman", "mri_woman"),
    "skull": ("skull",),
    "visMale": ("visMale", "vis_male"),
}

COUNTS = [
    ("abdominal_stent", 1350.5, 488, 2649, {
        "above": [(1317, 1317), (2122, 3658), (2302, 4987), (2437, 6977), (2518, 9490)],
        "below": [(42, 42), (62, 94), (65, 122), (66, 142), (66, 142)]}),
    ("aneurysm", 30.5, 163, 4241, {
        "above": [(3015, 3015), (3921, 5434), (4034, 6243), (4099, 7154), (4130, 8066)],
        "below": [(67, 67), (85, 121), (85, 121), (85, 121), (85, 121)]}),
    ("bonsai", 50.5, 305, 1428, {
        "above": [(338, 338), (780, 1639), (928, 2752), (1057, 4614), (1141, 7361)],
        "below": [(61, 61), (125, 261), (153, 483), (180, 869), (197, 1420)]}),
    ("carp", 600.5, 450, 81, {
        "above": [(4, 4), (5, 6), (5, 6), (5, 6), (6, 29)],
        "below": [(9, 9), (27, 62), (33, 113), (41, 235), (55, 725)]}),
    ("carp", 1150.5, 662, 2358, {
        "above": [(948, 948), (1721, 3112), (1917, 4595), (2016, 6034), (2090, 8327)],
        "below": [(71, 71), (141, 273), (163, 448), (171, 568), (188, 1146)]}),
    ("colon_prone", 1500.5, 1433, 7286, {
        "above": [(3867, 3867), (6061, 9931), (6463, 12951), (6660, 15791), (6813, 20426)],
        "below": [(183, 183), (262, 384), (276, 486), (278, 510), (278, 510)]}),
    ("colon_supine", 1500.5, 1392, 6734, {
        "above": [(3470, 3470), (5513, 9135), (5896, 12009), (6096, 14904), (6212, 18648)],
        "below": [(188, 188), (282, 457), (296, 568), (301, 641), (302, 665)]}),
    ("lobster", 20.5, 239, 4031, {
        "above": [(1462, 1462), (3171, 6262), (3482, 8520), (3633, 10669), (3703, 12891)],
        "below": [(132, 132), (229, 415), (246, 544), (264, 801), (276, 1141)]}),
    ("MRIwoman", 1100.5, 599, 8788, {
        "above": [(4921, 4921), (6448, 8936), (6603, 10099), (6680, 11236), (6713, 12363)],
        "below": [(1584, 1584), (2000, 2646), (2026, 2839), (2039, 3031), (2040, 3053)]}),
    ("skull", 40.5, 959, 4819, {
        "above": [(2965, 2965), (4055, 5939), (4232, 7262), (4319, 8552), (4396, 10928)],
        "below": [(252, 252), (317, 419), (326, 480), (330, 537), (331, 561)]}),
    ("visMale", 55.5, 279, 283, {
        "above": [(26, 26), (44, 80), (53, 152), (55, 181), (61, 371)],
        "below": [(67, 67), (124, 224), (145, 390), (161, 643), (181, 1280)]}),
    ("visMale", 70.5, 453, 2057, {
        "above": [(904, 904), (1577, 2775), (1724, 3869), (1795, 4896), (1827, 5837)],
        "below": [(88, 88), (161, 301), (177, 422), (186, 551), (191, 703)]}),
]
