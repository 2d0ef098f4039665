# Shuffling-mode rows: name, side, mean, std, m*, lower, upper (8-bit images, alpha=0.05).
TABLE2_SHUFFLING = """
5.1.09 256 29.58 25.76 574 27.47 31.69
5.1.10 256 51.54 38.15 619 48.53 54.54
5.1.11 256 33.82 32.31 638 31.31 36.33
5.1.12 256 58.51 55.96 766 54.54 62.47
5.1.13 256 51.24 94.08 1132 45.76 56.72
5.1.14 256 47.60 36.37 616 44.73 50.47
5.2.08 512 43.75 35.99 998 41.52 45.98
5.2.09 512 40.58 38.27 1066 38.29 42.88
5.2.10 512 61.91 46.46 1054 59.11 64.72
5.3.01 1024 66.54 47.79 1664 64.24 68.84
5.3.02 1024 37.88 32.88 1565 36.25 39.51
7.1.01 512 29.48 24.41 879 27.87 31.10
7.1.02 512 17.00 26.26 1109 15.46 18.55
7.1.03 512 27.98 26.10 935 26.31 29.65
7.1.04 512 36.38 33.02 1002 34.34 38.43
7.1.05 512 39.71 29.46 902 37.79 41.64
7.1.06 512 37.93 27.97 885 36.09 39.77
7.1.07 512 26.19 21.92 851 24.72 27.66
7.1.08 512 21.85 26.18 1018 20.24 23.45
7.1.09 512 40.67 30.50 916 38.70 42.65
7.1.10 512 29.12 24.38 882 27.51 30.73
7.2.01 1024 21.27 29.33 1758 19.89 22.64
boat.512 512 49.85 43.27 1081 47.27 52.43
elaine.512 512 52.65 38.35 979 50.25 55.05
gray21.512 512 88.72 62.95 1145 85.07 92.36
numbers.512 512 70.28 51.91 1088 67.19 73.36
ruler.512 512 49.94 101.20 1902 45.40 54.49
testpat.1k 1024 85.28 64.98 1881 82.35 88.22
"""

ROWS = [
    (name, int(side), float(mu), float(sd), int(m), float(lo), float(hi))
    for name, side, mu, sd, m, lo, hi in (line.split() for line in TABLE2_SHUFFLING.strip().splitlines())
]

# Encryption-mode columns: side -> (m*, lower, upper).
TABLE2_ENCRYPTION = {256: (711, 80.90, 89.77), 512: (1128, 81.81, 88.85), 1024: (1790, 82.54, 88.13)}
