from cli.commands import main as run_command
import sys

def main():
    sys.exit(run_command(sys.argv[1:]))

if __name__ == "__main__":
    main()
