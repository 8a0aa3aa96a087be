"""
Run the gowers-lab command line from a source checkout: python cli.py norm --p 3 --n 1 --d 2 --poly "x0"
"""
from gowers_lab.cli.main import run

if __name__ == "__main__":
    run()
